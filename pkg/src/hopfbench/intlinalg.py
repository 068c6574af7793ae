"""Exact integer linear algebra: Smith/Hermite normal forms, finitely
generated abelian groups, integer chain homology, and limits of finite
diagrams of presented abelian groups.

All matrices are dense, immutable, and hold plain Python ints, so every
computation is exact at arbitrary precision.  Row-vector convention
throughout: a matrix M with shape (r, c) represents the homomorphism
Z^r -> Z^c sending v to v*M.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvariantViolated, NonComposable


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with explicit shape (rows may be zero)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in row) for row in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols required for a matrix with no rows")
            cols = len(rows[0])
        return IntMatrix(len(rows), cols, tuple(rows))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(
            n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )

    @staticmethod
    def diagonal(values) -> "IntMatrix":
        values = [int(v) for v in values]
        n = len(values)
        return IntMatrix(
            n, n,
            tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)),
        )

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for row in self.entries:
            out.append(
                tuple(
                    sum(row[k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                )
            )
        return IntMatrix(self.rows, other.cols, tuple(out))

    def transpose(self) -> "IntMatrix":
        ents = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return IntMatrix(self.cols, self.rows, ents)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.entries)

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in stack")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def __str__(self):
        return format_matrix_text(self)


def mat_vec(v: tuple[int, ...], M: IntMatrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    if len(v) != M.rows:
        raise ValueError("vector/matrix shape mismatch")
    return tuple(sum(v[i] * M.entries[i][j] for i in range(M.rows)) for j in range(M.cols))


def parse_matrix_text(text: str) -> IntMatrix:
    """Parse the matrix text format: first line "rows cols", then row-major
    whitespace-separated integers."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text needs a 'rows cols' header")
    rows, cols = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(body)}")
    ents = tuple(
        tuple(int(body[i * cols + j]) for j in range(cols)) for i in range(rows)
    )
    return IntMatrix(rows, cols, ents)


def format_matrix_text(M: IntMatrix) -> str:
    lines = [f"{M.rows} {M.cols}"]
    for row in M.entries:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# normal forms


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (S, U, V) with U*M*V = S,
    S diagonal with d_i | d_{i+1} and d_i >= 0, U and V unimodular.

    Pivoting picks the entry of minimal nonzero absolute value, which keeps
    intermediate growth down in practice.
    """
    r, c = M.rows, M.cols
    A = [list(row) for row in M.entries]
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    V = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        Ad, As = A[dst], A[src]
        for k in range(c):
            Ad[k] += q * As[k]
        Ud, Us = U[dst], U[src]
        for k in range(r):
            Ud[k] += q * Us[k]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    n = min(r, c)
    while t < n:
        # locate minimal-|value| nonzero pivot in the trailing submatrix
        piv = None
        best = None
        for i in range(t, r):
            Ai = A[i]
            for j in range(t, c):
                v = Ai[j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])

        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, r):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t right of the pivot
            for j in range(t + 1, c):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # every remaining entry must be divisible by the pivot
            bad = None
            d = A[t][t]
            for i in range(t + 1, r):
                Ai = A[i]
                for j in range(t + 1, c):
                    if Ai[j] % d != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1

    S = IntMatrix(r, c, tuple(tuple(row) for row in A))
    return (
        S,
        IntMatrix(r, r, tuple(tuple(row) for row in U)),
        IntMatrix(c, c, tuple(tuple(row) for row in V)),
    )


def snf_diagonal(M: IntMatrix) -> list[int]:
    """Nonzero invariant factors (1s included) of the SNF; transform-free,
    so much faster than :func:`smith_normal_form` when only the diagonal is
    needed."""
    return _snf_diag_inplace([list(row) for row in M.entries], M.rows, M.cols)


def _snf_diag_inplace(A: list[list[int]], r: int, c: int) -> list[int]:
    diag: list[int] = []
    t = 0
    n = min(r, c)
    while t < n:
        piv = None
        best = None
        for i in range(t, r):
            Ai = A[i]
            for j in range(t, c):
                v = Ai[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        A[t], A[piv[0]] = A[piv[0]], A[t]
        if piv[1] != t:
            j = piv[1]
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        Ai, At = A[i], A[t]
                        for k in range(t, c):
                            Ai[k] -= q * At[k]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, c):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            d = A[t][t]
            bad = None
            for i in range(t + 1, r):
                Ai = A[i]
                for j in range(t + 1, c):
                    if Ai[j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            At, Ab = A[t], A[bad]
            for k in range(t, c):
                At[k] += Ab[k]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def hermite_normal_form(M: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form: positive pivots strictly right of the
    ones above, entries above each pivot reduced into [0, pivot).  Zero rows
    are dropped, so the result is a canonical basis of the row lattice."""
    rows = [list(r) for r in M.entries]
    return IntMatrix.from_rows(_hnf_rows(rows, M.cols), M.cols)


def _hnf_rows(rows: list[list[int]], cols: int) -> list[list[int]]:
    basis: list[list[int]] = []  # kept in echelon order, pivot col increasing
    pivots: list[int] = []
    for row in rows:
        row = list(row)
        k = 0
        while True:
            # find leading column
            lead = next((j for j in range(cols) if row[j] != 0), None)
            if lead is None:
                break
            # locate insertion point among existing pivots
            pos = 0
            while pos < len(pivots) and pivots[pos] < lead:
                pos += 1
            if pos < len(pivots) and pivots[pos] == lead:
                b = basis[pos]
                g = gcd(b[lead], row[lead])
                if row[lead] % b[lead] == 0:
                    q = row[lead] // b[lead]
                    for j in range(lead, cols):
                        row[j] -= q * b[j]
                else:
                    # replace pivot by the gcd combination, push remainder back
                    x, y = _bezout(b[lead], row[lead])
                    newb = [x * b[j] + y * row[j] for j in range(cols)]
                    qb = b[lead] // g
                    qr = row[lead] // g
                    newrow = [qb * row[j] - qr * b[j] for j in range(cols)]
                    basis[pos] = newb
                    row = newrow
                continue
            basis.insert(pos, row)
            pivots.insert(pos, lead)
            break
        k += 1
    # normalize: positive pivots, entries above each pivot reduced into
    # [0, pivot); ascending pivot order so a fixed column is never revisited
    for i in range(len(basis)):
        if basis[i][pivots[i]] < 0:
            basis[i] = [-x for x in basis[i]]
    for i in range(len(basis)):
        p = pivots[i]
        d = basis[i][p]
        for k in range(i):
            q = basis[k][p] // d
            if q:
                basis[k] = [basis[k][j] - q * basis[i][j] for j in range(cols)]
    return basis


def sparse_lattice_basis(sparse_rows, cols: int) -> IntMatrix:
    """Basis of the row lattice spanned by (many) sparse rows.

    Unit-pivot row elimination first: rows already processed are frozen, so
    only row operations are ever applied and the lattice is preservedexactly;
    the unit-free residue is finished by Hermite reduction.  The result is a
    basis, not a canonical form."""
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for i, items in enumerate(sparse_rows):
        d = dict(items)
        d = {c: v for c, v in d.items() if v}
        if d:
            rows[i] = d
            for c in d:
                col_rows.setdefault(c, set()).add(i)
    done: list[dict[int, int]] = []

    def detach(rid):
        for c in rows[rid]:
            col_rows[c].discard(rid)
            if not col_rows[c]:
                del col_rows[c]
        return rows.pop(rid)

    while rows:
        best = None
        for c in sorted(col_rows, key=lambda cc: len(col_rows[cc])):
            for rid in col_rows[c]:
                v = rows[rid][c]
                if v == 1 or v == -1:
                    if best is None or len(rows[rid]) < len(rows[best[0]]):
                        best = (rid, c, v)
            if best is not None:
                break
        if best is None:
            break
        rid, c, v = best
        piv = detach(rid)
        done.append(piv)
        for rid2 in list(col_rows.get(c, ())):
            row2 = rows[rid2]
            factor = row2[c] * v
            for pc, pv in piv.items():
                new = row2.get(pc, 0) - factor * pv
                if new:
                    if pc not in row2:
                        col_rows.setdefault(pc, set()).add(rid2)
                    row2[pc] = new
                elif pc in row2:
                    del row2[pc]
                    col_rows[pc].discard(rid2)
                    if not col_rows[pc]:
                        del col_rows[pc]
            if not row2:
                rows.pop(rid2)

    basis_rows = []
    for d in done:
        row = [0] * cols
        for c, v in d.items():
            row[c] = v
        basis_rows.append(row)
    if rows:
        residue = set()
        for d in rows.values():
            row = [0] * cols
            for c, v in d.items():
                row[c] = v
            residue.add(tuple(row))
        basis_rows.extend(_hnf_rows([list(r) for r in sorted(residue)], cols))
    return IntMatrix.from_rows(basis_rows, cols)


def _bezout(a: int, b: int) -> tuple[int, int]:
    """(x, y) with x*a + y*b = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant needs a square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = [list(row) for row in M.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def kernel_lattice(M: IntMatrix) -> IntMatrix:
    """Canonical (Hermite-reduced) basis of the left kernel {v : v*M = 0}."""
    S, U, _ = smith_normal_form(M)
    rank = sum(1 for i in range(min(M.rows, M.cols)) if S.entries[i][i] != 0)
    rows = [list(U.entries[i]) for i in range(rank, M.rows)]
    return IntMatrix.from_rows(_hnf_rows(rows, M.rows), M.rows)


def solve_left(K: IntMatrix, R: IntMatrix) -> IntMatrix | None:
    """Solve X*K = R over the integers; None if no solution exists."""
    if K.cols != R.cols:
        raise ValueError("shape mismatch in solve_left")
    S, U, V = smith_normal_form(K)
    rank = sum(1 for i in range(min(K.rows, K.cols)) if S.entries[i][i] != 0)
    RV = R * V
    Y = []
    for i in range(R.rows):
        yrow = [0] * K.rows
        for j in range(K.cols):
            v = RV.entries[i][j]
            if j < rank:
                d = S.entries[j][j]
                if v % d != 0:
                    return None
                yrow[j] = v // d
            elif v != 0:
                return None
        Y.append(yrow)
    return IntMatrix.from_rows(Y, K.rows) * U


def unimodular_inverse(M: IntMatrix) -> IntMatrix:
    inv = solve_left(M, IntMatrix.identity(M.rows))
    if inv is None:
        raise ValueError("matrix is not unimodular")
    return inv


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group in invariant-factor normal form:
    Z/d_1 x ... x Z/d_r x Z^free_rank with 2 <= d_1 | d_2 | ... | d_r.

    The representation is unique per isomorphism class, so equality is
    isomorphism."""

    torsion: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if prev is not None and d % prev != 0:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = d
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @staticmethod
    def trivial() -> "FgAbelianGroup":
        return FgAbelianGroup((), 0)

    @staticmethod
    def free(rank: int) -> "FgAbelianGroup":
        return FgAbelianGroup((), rank)

    @staticmethod
    def cyclic(n: int) -> "FgAbelianGroup":
        if n == 0:
            return FgAbelianGroup((), 1)
        if n == 1:
            return FgAbelianGroup((), 0)
        return FgAbelianGroup((n,), 0)

    @staticmethod
    def from_factor_multiset(factors) -> "FgAbelianGroup":
        """Normalize an unordered list of cyclic orders (>= 1, 0 for Z) into
        invariant-factor form."""
        free = sum(1 for d in factors if d == 0)
        primary: dict[int, list[int]] = {}
        for d in factors:
            if d in (0, 1):
                continue
            for p, e in _factorint(d).items():
                primary.setdefault(p, []).append(p**e)
        for p in primary:
            primary[p].sort(reverse=True)
        depth = max((len(v) for v in primary.values()), default=0)
        invs = []
        for i in range(depth):
            f = 1
            for p, powers in primary.items():
                if i < len(powers):
                    f *= powers[i]
            invs.append(f)
        invs.reverse()
        return FgAbelianGroup(tuple(invs), free)

    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite():
            raise ValueError("infinite group has no order")
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def exponent(self) -> int:
        """Exponent of the torsion part; 0 when the group is infinite."""
        if self.free_rank:
            return 0
        return self.torsion[-1] if self.torsion else 1

    def elements(self):
        """All elements as coordinate tuples (finite groups only)."""
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")
        coords = [()]
        for d in self.torsion:
            coords = [c + (x,) for c in coords for x in range(d)]
        return coords

    def primary_decomposition(self) -> dict[int, list[int]]:
        """Per-prime lists of exponents e (one p^e summand each), descending."""
        out: dict[int, list[int]] = {}
        for d in self.torsion:
            for p, e in _factorint(d).items():
                out.setdefault(p, []).append(e)
        for p in out:
            out[p].sort(reverse=True)
        return out

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


def _factorint(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def cokernel(M: IntMatrix) -> FgAbelianGroup:
    """Z^cols modulo the row span of M, in invariant-factor form."""
    diag = snf_diagonal(M)
    torsion = tuple(d for d in diag if d >= 2)
    return FgAbelianGroup(torsion, M.cols - len(diag))


@dataclass(frozen=True)
class CokernelBasis:
    """Cokernel Z^c / rowspan(M) together with an explicit canonical basis.

    Generators are ordered torsion first (matching ``group.torsion``), then
    free.  ``project`` sends an ambient vector to its coordinates, ``lift``
    sends a generator index to an ambient representative."""

    group: FgAbelianGroup
    ambient_dim: int
    _V: IntMatrix
    _Vinv: IntMatrix
    _diag: tuple[int, ...]
    _gen_rows: tuple[int, ...]

    @staticmethod
    def of(M: IntMatrix) -> "CokernelBasis":
        S, _, V = smith_normal_form(M)
        n = min(M.rows, M.cols)
        diag = [S.entries[i][i] for i in range(n)]
        rank = sum(1 for d in diag if d != 0)
        torsion_rows = [i for i in range(rank) if diag[i] >= 2]
        free_rows = list(range(rank, M.cols))
        group = FgAbelianGroup(tuple(diag[i] for i in torsion_rows), len(free_rows))
        return CokernelBasis(
            group,
            M.cols,
            V,
            unimodular_inverse(V),
            tuple(diag[:rank]),
            tuple(torsion_rows + free_rows),
        )

    def project(self, v) -> tuple[int, ...]:
        """Coordinates of an ambient vector in the canonical generators."""
        z = mat_vec(tuple(int(x) for x in v), self._V)
        out = []
        for k, row in enumerate(self._gen_rows):
            if k < len(self.group.torsion):
                out.append(z[row] % self.group.torsion[k])
            else:
                out.append(z[row])
        return tuple(out)

    def lift(self, gen_index: int) -> tuple[int, ...]:
        """Ambient representative of canonical generator ``gen_index``."""
        return self._Vinv.entries[self._gen_rows[gen_index]]

    @property
    def ngens(self) -> int:
        return len(self._gen_rows)


@dataclass(frozen=True)
class QuotientBasis:
    """Quotient N / D of a lattice N (given by a basis) by a sublattice D,
    with projection from and lifting to the common ambient Z^c."""

    group: FgAbelianGroup
    basis: IntMatrix  # rows: basis of N inside Z^c
    _coker: CokernelBasis

    @staticmethod
    def of(n_basis: IntMatrix, d_gens: IntMatrix) -> "QuotientBasis":
        if d_gens.rows:
            X = solve_left(n_basis, d_gens)
            if X is None:
                raise InvariantViolated("denominator does not lie in the numerator lattice")
        else:
            X = IntMatrix.zero(0, n_basis.rows)
        ck = CokernelBasis.of(X)
        return QuotientBasis(ck.group, n_basis, ck)

    def project(self, v) -> tuple[int, ...]:
        coords = solve_left(self.basis, IntMatrix.from_rows([v], self.basis.cols))
        if coords is None:
            raise InvariantViolated("vector is not in the numerator lattice")
        return self._coker.project(coords.entries[0])

    def lift(self, gen_index: int) -> tuple[int, ...]:
        y = self._coker.lift(gen_index)
        return mat_vec(y, self.basis)

    @property
    def ngens(self) -> int:
        return self._coker.ngens


def chain_homology(boundary_in: IntMatrix, boundary_out: IntMatrix) -> FgAbelianGroup:
    """Homology ker(boundary_out)/im(boundary_in) at the middle of
    Z^a --boundary_in--> Z^m --boundary_out--> Z^b  (row-vector maps).

    Raises NonComposable unless boundary_in * boundary_out = 0."""
    if boundary_in.cols != boundary_out.rows:
        raise NonComposable("boundary shapes do not compose")
    if not (boundary_in * boundary_out).is_zero():
        raise NonComposable("composite of consecutive boundaries is nonzero")
    K = kernel_lattice(boundary_out)
    X = solve_left(K, boundary_in)
    if X is None:  # unreachable given the composability check
        raise NonComposable("image does not lie in the kernel")
    return cokernel(X)


# ---------------------------------------------------------------------------
# presented abelian groups and limits


@dataclass(frozen=True)
class PresentedAbGroup:
    """Abelian group presented as Z^generator_count modulo the row span of
    ``relations``."""

    generator_count: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.cols != self.generator_count:
            raise ValueError("relations must have generator_count columns")

    @staticmethod
    def free(n: int) -> "PresentedAbGroup":
        return PresentedAbGroup(n, IntMatrix.zero(0, n))

    def group(self) -> FgAbelianGroup:
        return cokernel(self.relations)


@dataclass(frozen=True)
class AbDiagram:
    """Finite diagram of presented abelian groups.

    Arrows are (source index, target index, matrix) with the matrix acting on
    row vectors; each arrow must map the source relations into the relation
    lattice of the target (well-definedness), which is checked."""

    objects: tuple[PresentedAbGroup, ...]
    arrows: tuple[tuple[int, int, IntMatrix], ...]

    def __post_init__(self):
        for (src, dst, M) in self.arrows:
            if not (0 <= src < len(self.objects) and 0 <= dst < len(self.objects)):
                raise ValueError("arrow endpoint out of range")
            s, t = self.objects[src], self.objects[dst]
            if M.rows != s.generator_count or M.cols != t.generator_count:
                raise ValueError("arrow matrix shape mismatch")
            if s.relations.rows:
                mapped = s.relations * M
                if t.relations.rows:
                    if solve_left(hermite_normal_form(t.relations), mapped) is None:
                        raise InvariantViolated("arrow does not preserve relations")
                elif not mapped.is_zero():
                    raise InvariantViolated("arrow does not preserve relations")


def limit_of_diagram(D: AbDiagram) -> tuple[FgAbelianGroup, list[IntMatrix]]:
    """Limit of a finite diagram of presented abelian groups.

    Returns the limit in invariant-factor form together with one leg matrix
    per object: row g of ``legs[i]`` is the image in Z^{n_i} (read modulo the
    object's relations) of the g-th canonical generator of the limit.  The
    empty diagram yields the trivial group."""
    qb = _limit_quotient_basis(D)
    offs = _object_offsets(D)
    legs = []
    for i, obj in enumerate(D.objects):
        lo = offs[i]
        rows = [qb.lift(g)[lo:lo + obj.generator_count] for g in range(qb.ngens)]
        legs.append(IntMatrix.from_rows(rows, obj.generator_count))
    return qb.group, legs


def _object_offsets(D: AbDiagram) -> list[int]:
    offs = []
    total = 0
    for obj in D.objects:
        offs.append(total)
        total += obj.generator_count
    return offs


def _limit_quotient_basis(D: AbDiagram) -> QuotientBasis:
    offs = _object_offsets(D)
    total = offs[-1] + D.objects[-1].generator_count if D.objects else 0

    # the cone condition v_src*M - v_dst in L_dst, with one block of auxiliary
    # unknowns per arrow witnessing membership in the relation lattice
    aux_offsets = []
    aux_total = 0
    for (_, dst, _) in D.arrows:
        aux_offsets.append(total + aux_total)
        aux_total += D.objects[dst].relations.rows

    ncols = sum(D.objects[dst].generator_count for (_, dst, _) in D.arrows)
    rows = [[0] * ncols for _ in range(total + aux_total)]
    col = 0
    for a, (src, dst, M) in enumerate(D.arrows):
        tgt = D.objects[dst]
        for i in range(D.objects[src].generator_count):
            for j in range(tgt.generator_count):
                rows[offs[src] + i][col + j] += M.entries[i][j]
        for j in range(tgt.generator_count):
            rows[offs[dst] + j][col + j] -= 1
        L = tgt.relations
        for i in range(L.rows):
            for j in range(tgt.generator_count):
                rows[aux_offsets[a] + i][col + j] -= L.entries[i][j]
        col += tgt.generator_count

    sol = kernel_lattice(IntMatrix.from_rows(rows, ncols) if ncols else IntMatrix.zero(total + aux_total, 0))
    v_rows = [list(r[:total]) for r in sol.entries]
    n_basis = IntMatrix.from_rows(_hnf_rows(v_rows, total), total)

    # denominator: direct sum of the objects' relation lattices
    d_rows = []
    for i, obj in enumerate(D.objects):
        for rel in obj.relations.entries:
            row = [0] * total
            row[offs[i]:offs[i] + obj.generator_count] = list(rel)
            d_rows.append(row)
    d_gens = IntMatrix.from_rows(d_rows, total) if d_rows else IntMatrix.zero(0, total)
    return QuotientBasis.of(n_basis, d_gens)


def limit_with_projection(D: AbDiagram) -> tuple[QuotientBasis, list[int]]:
    """Limit as a QuotientBasis in the product coordinates plus offsets of the
    object blocks; for callers that need to map product vectors to limit
    coordinates."""
    return _limit_quotient_basis(D), _object_offsets(D)
