"""Integral H1 and H2 of finite groups via the normalized bar resolution,
functoriality, the explicit connecting map, and the five-term exact sequence
with exactness checking.

Two independent H2 routes are provided: the bar route (Smith invariants of
the degree-3 boundary) and the dual route (2-cocycle class counting over
prime-power moduli, dualized through the universal-coefficient bookkeeping).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cochains import cocycle_system, torsion_profile
from .errors import BadSection, InvariantViolated, OrderLimitExceeded
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    abelian_structure,
    commutator_subgroup_pair,
    derived_subgroup,
    quotient,
    subgroup_embedding,
    whole_group,
)
from .intlinalg import (
    CokernelBasis,
    FgAbelianGroup,
    IntMatrix,
    _factorint,
    cokernel,
    hermite_normal_form,
    kernel_lattice,
    snf_diagonal,
    solve_left,
)

DENSE_BAR_CAP = 64
DUAL_ROUTE_CAP = 660
FIVE_TERM_CAP = 24
AUTO_BAR_LIMIT = 24  # above this, h2() prefers the dual route


# ---------------------------------------------------------------------------
# bar complex


@dataclass(frozen=True)
class BarComplex:
    """Normalized bar complex of a finite group through degree 3.

    Bases are tuples of non-identity elements; boundary summands whose tuple
    contains the identity are dropped.  d3 is kept as sparse rows (one dict
    per basis triple); d1 and d2 are dense."""

    group: FiniteGroup
    basis1: tuple[int, ...]
    basis2: tuple[tuple[int, int], ...]
    basis3: tuple[tuple[int, int, int], ...]
    d1: IntMatrix
    d2: IntMatrix
    d3_rows: tuple[tuple[tuple[int, int], ...], ...]  # row -> ((col, val), ...)

    def d3_matrix(self) -> IntMatrix:
        rows = []
        for items in self.d3_rows:
            row = [0] * len(self.basis2)
            for col, val in items:
                row[col] = val
            rows.append(row)
        return IntMatrix.from_rows(rows, len(self.basis2))


def _d2_entries(G: FiniteGroup, nonid, index1):
    rows = []
    e = G.identity
    for g in nonid:
        for h in nonid:
            row = [0] * len(nonid)
            row[index1[h]] += 1
            row[index1[g]] += 1
            gh = G.table[g][h]
            if gh != e:
                row[index1[gh]] -= 1
            rows.append(row)
    return rows


def _d3_sparse(G: FiniteGroup, nonid, index2):
    e = G.identity
    rows = []
    for g in nonid:
        for h in nonid:
            gh = G.table[g][h]
            for k in nonid:
                hk = G.table[h][k]
                acc: dict[int, int] = {}

                def add(pair, val, acc=acc):
                    c = index2[pair]
                    acc[c] = acc.get(c, 0) + val

                add((h, k), 1)
                if gh != e:
                    add((gh, k), -1)
                if hk != e:
                    add((g, hk), 1)
                add((g, h), -1)
                items = tuple(
                    (c, v) for c, v in sorted(acc.items()) if v != 0
                )
                rows.append(items)
    return rows


def bar_complex(G: FiniteGroup, cap: int = DENSE_BAR_CAP) -> BarComplex:
    """Boundary data of the normalized bar complex; raises above the cap."""
    if G.order > cap:
        raise OrderLimitExceeded(f"group order {G.order} exceeds the bar cap {cap}")
    e = G.identity
    nonid = [x for x in G.elements() if x != e]
    index1 = {g: i for i, g in enumerate(nonid)}
    basis2 = tuple((g, h) for g in nonid for h in nonid)
    index2 = {p: i for i, p in enumerate(basis2)}
    basis3 = tuple((g, h, k) for g in nonid for h in nonid for k in nonid)
    d1 = IntMatrix.zero(len(nonid), 1)
    d2 = (
        IntMatrix.from_rows(_d2_entries(G, nonid, index1), len(nonid))
        if nonid
        else IntMatrix.zero(0, 0)
    )
    d3 = tuple(_d3_sparse(G, nonid, index2))
    return BarComplex(G, tuple(nonid), basis2, basis3, d1, d2, d3)


# ---------------------------------------------------------------------------
# sparse Smith invariants (unit-pivot elimination plus dense residue)


def sparse_invariants(row_items, ncols: int) -> list[int]:
    """Nonzero Smith invariant factors of the sparse integer matrix whose
    rows are given as ((col, val), ...) tuples.

    Eliminates on +-1 pivots chosen by a Markowitz-style fill estimate; the
    remaining dense core goes through the exact Smith routine."""
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for i, items in enumerate(row_items):
        d = {c: v for c, v in items if v}
        if d:
            rows[i] = d
            for c in d:
                col_rows.setdefault(c, set()).add(i)
    invariants: list[int] = []

    def detach(rid):
        for c in rows[rid]:
            col_rows[c].discard(rid)
            if not col_rows[c]:
                del col_rows[c]
        return rows.pop(rid)

    while rows:
        # pivot in the least-occupied column that holds a +-1 entry, on the
        # shortest such row: cheap selection, low fill in practice
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
        for rid2 in list(col_rows.get(c, ())):
            row2 = rows[rid2]
            factor = row2[c] * v  # v in {1, -1}: multiple of pivot to remove
            for pc, pv in piv.items():
                new = row2.get(pc, 0) - factor * pv
                if new:
                    if pc not in row2:
                        col_rows.setdefault(pc, set()).add(rid2)
                    row2[pc] = new
                else:
                    if pc in row2:
                        del row2[pc]
                        col_rows[pc].discard(rid2)
                        if not col_rows[pc]:
                            del col_rows[pc]
            if not row2:
                detach_empty = rows.pop(rid2)
                del detach_empty
        invariants.append(1)

    if rows:
        live_cols = sorted(col_rows)
        remap = {c: i for i, c in enumerate(live_cols)}
        dense = []
        for row in rows.values():
            r = [0] * len(live_cols)
            for c, v in row.items():
                r[remap[c]] = v
            dense.append(r)
        residual = snf_diagonal(IntMatrix.from_rows(dense, len(live_cols)))
        invariants.extend(residual)
    return invariants


# ---------------------------------------------------------------------------
# H1 and H2


def h1(G: FiniteGroup, cap: int = DENSE_BAR_CAP) -> FgAbelianGroup:
    """First homology from the bar complex (the abelianization)."""
    if G.order > cap:
        raise OrderLimitExceeded(f"group order {G.order} exceeds the bar cap {cap}")
    if G.order == 1:
        return FgAbelianGroup.trivial()
    e = G.identity
    nonid = [x for x in G.elements() if x != e]
    index1 = {g: i for i, g in enumerate(nonid)}
    rows = _d2_entries(G, nonid, index1)
    return cokernel(IntMatrix.from_rows(rows, len(nonid)))


def h2_bar(G: FiniteGroup, cap: int = DENSE_BAR_CAP) -> FgAbelianGroup:
    """Second homology by Smith invariants of the degree-3 bar boundary."""
    if G.order > cap:
        raise OrderLimitExceeded(f"group order {G.order} exceeds the bar cap {cap}")
    if G.order == 1:
        return FgAbelianGroup.trivial()
    bc = bar_complex(G, cap=cap)
    inv3 = sparse_invariants(set(bc.d3_rows), len(bc.basis2))
    rank2 = len(snf_diagonal(bc.d2))
    free = len(bc.basis2) - rank2 - len(inv3)
    torsion = tuple(d for d in inv3 if d >= 2)
    return FgAbelianGroup(torsion, free)


def h2_dual(G: FiniteGroup, cap: int = DUAL_ROUTE_CAP) -> FgAbelianGroup:
    """Second homology by the dual route: sizes of 2-cocycle class groups
    over Z/p^j recover the invariants of H2 + H1, and H1 is subtracted."""
    if G.order > cap:
        raise OrderLimitExceeded(
            f"group order {G.order} exceeds the dual-route cap {cap}"
        )
    if G.order == 1:
        return FgAbelianGroup.trivial()
    system = cocycle_system(G)
    Gab, _ = quotient(G, derived_subgroup(G))
    h1_group = abelian_structure(Gab).group
    factors: list[int] = []
    for p in sorted(_factorint(G.order)):
        exponents = torsion_profile(system, p)
        for d in h1_group.torsion:
            v = 0
            dd = d
            while dd % p == 0:
                dd //= p
                v += 1
            if v:
                if v not in exponents:
                    raise InvariantViolated(
                        "dual route lost an abelianization invariant"
                    )
                exponents.remove(v)
        factors.extend(p**c for c in exponents)
    return FgAbelianGroup.from_factor_multiset(factors)


def choose_h2_method(G: FiniteGroup) -> str:
    return "bar" if G.order <= AUTO_BAR_LIMIT else "dual"


def h2(G: FiniteGroup, method: str = "auto") -> FgAbelianGroup:
    """Second integral homology (the Schur multiplier).

    method: "bar" (cap 64), "dual" (cap 660), or "auto"."""
    if method == "auto":
        method = choose_h2_method(G)
    if method == "bar":
        return h2_bar(G)
    if method == "dual":
        return h2_dual(G)
    raise ValueError(f"unknown h2 method {method!r}")


# ---------------------------------------------------------------------------
# based H2: cycle bookkeeping for functoriality and connecting maps


@dataclass(frozen=True)
class BasedH2:
    """H2 via the bar complex together with an explicit cycle basis: project
    arbitrary 2-cycles to invariant-factor coordinates and lift canonical
    generators to cycles."""

    group_table: FiniteGroup
    basis2: tuple[tuple[int, int], ...]
    index2: dict
    cycles: IntMatrix  # rows: basis of ker d2
    coker: CokernelBasis

    @property
    def group(self) -> FgAbelianGroup:
        return self.coker.group

    @property
    def ngens(self) -> int:
        return self.coker.ngens

    def project(self, vec) -> tuple[int, ...]:
        y = solve_left(self.cycles, IntMatrix.from_rows([vec], self.cycles.cols))
        if y is None:
            raise InvariantViolated("vector is not a 2-cycle")
        return self.coker.project(y.entries[0])

    def generator_cycle(self, i: int) -> tuple[int, ...]:
        y = self.coker.lift(i)
        return tuple(
            sum(y[r] * self.cycles.entries[r][c] for r in range(self.cycles.rows))
            for c in range(self.cycles.cols)
        )


def based_h2(G: FiniteGroup, cap: int = FIVE_TERM_CAP) -> BasedH2:
    if G.order > cap:
        raise OrderLimitExceeded(
            f"group order {G.order} exceeds the based-H2 cap {cap}"
        )
    bc = bar_complex(G, cap=max(cap, DENSE_BAR_CAP))
    if not bc.basis2:
        return BasedH2(
            G, (), {}, IntMatrix.zero(0, 0), CokernelBasis.of(IntMatrix.zero(0, 0))
        )
    K = kernel_lattice(bc.d2)
    unique_rows = sorted(set(bc.d3_rows))
    dense = []
    for items in unique_rows:
        row = [0] * len(bc.basis2)
        for c, v in items:
            row[c] = v
        dense.append(row)
    D3 = (
        IntMatrix.from_rows(dense, len(bc.basis2))
        if dense
        else IntMatrix.zero(0, len(bc.basis2))
    )
    X = solve_left(K, D3)
    if X is None:
        raise InvariantViolated("bar boundaries do not compose")
    coker = CokernelBasis.of(hermite_normal_form(X) if X.rows else X)
    return BasedH2(G, bc.basis2, dict(zip(bc.basis2, range(len(bc.basis2)))), K, coker)


# ---------------------------------------------------------------------------
# abelian bookkeeping for the sequence nodes


@dataclass(frozen=True)
class NodeStructure:
    """A finite abelian value group together with maps from group elements
    to coordinates and generator lifts back to elements of the source."""

    group: FgAbelianGroup
    coord_of_source: tuple[tuple[int, ...], ...]  # source element -> coords
    gen_source: tuple[int, ...]  # canonical generator -> source element


def h1_structure(G: FiniteGroup) -> NodeStructure:
    """Abelianization with coordinates for every element of G."""
    Q, proj = quotient(G, derived_subgroup(G))
    st = abelian_structure(Q)
    coords = tuple(st.coord_of(proj.image_of[g]) for g in G.elements())
    gen_source = []
    for target in st.gen_elements:
        gen_source.append(
            next(g for g in G.elements() if proj.image_of[g] == target)
        )
    return NodeStructure(st.group, coords, tuple(gen_source))


def centralised_kernel_structure(f_map: GroupHom, ker: Subgroup) -> NodeStructure:
    """K[f]/[K[f], B] with coordinates for every element of K[f] (indexed by
    its position in the kernel's element tuple)."""
    B = f_map.dom
    S, incl = subgroup_embedding(ker)
    den = commutator_subgroup_pair(B, ker, whole_group(B))
    pos = {x: i for i, x in enumerate(ker.elements)}
    den_in_S = Subgroup(S, tuple(sorted(pos[x] for x in den.elements)))
    Q, proj = quotient(S, den_in_S)
    st = abelian_structure(Q)
    coords = tuple(st.coord_of(proj.image_of[i]) for i in range(S.order))
    gen_source = []
    for target in st.gen_elements:
        i = next(i for i in range(S.order) if proj.image_of[i] == target)
        gen_source.append(ker.elements[i])
    return NodeStructure(st.group, coords, tuple(gen_source))


# ---------------------------------------------------------------------------
# induced maps and the connecting map


def induced_h1(f: GroupHom) -> IntMatrix:
    """H1(f) on invariant-factor bases."""
    src = h1_structure(f.dom)
    dst = h1_structure(f.cod)
    rows = [dst.coord_of_source[f.image_of[g]] for g in src.gen_source]
    return IntMatrix.from_rows(rows, len(dst.group.torsion) + dst.group.free_rank)


def _map_cycle(f: GroupHom, src: BasedH2, dst: BasedH2, vec) -> list[int]:
    e = f.cod.identity
    out = [0] * max(1, len(dst.basis2))
    if len(dst.basis2) == 0:
        return []
    for col, n in enumerate(vec):
        if not n:
            continue
        a, b = src.basis2[col]
        fa, fb = f.image_of[a], f.image_of[b]
        if fa == e or fb == e:
            continue
        out[dst.index2[(fa, fb)]] += n
    return out


def induced_h2(f: GroupHom, cap: int = FIVE_TERM_CAP) -> IntMatrix:
    """H2(f) on invariant-factor bases, by the bar chain map."""
    src = based_h2(f.dom, cap=cap)
    dst = based_h2(f.cod, cap=cap)
    rows = []
    for i in range(src.ngens):
        z = src.generator_cycle(i)
        if dst.ngens == 0:
            rows.append([])
            continue
        mapped = _map_cycle(f, src, dst, z)
        rows.append(list(dst.project(mapped)))
    return IntMatrix.from_rows(rows, dst.ngens)


def _default_section(f: GroupHom) -> list[int]:
    sec = [None] * f.cod.order
    for b in f.dom.elements():
        a = f.image_of[b]
        if sec[a] is None:
            sec[a] = b
    sec[f.cod.identity] = f.dom.identity
    return sec


def connecting_delta2(f_ext, section=None, cap: int = FIVE_TERM_CAP) -> IntMatrix:
    """The connecting map H2(cod f) -> K[f]/[K[f], B] by cycle lifting: the
    class of a 2-cycle sum n_(a,a') (a|a') maps to the product of
    (s(a) s(a') s(a a')^-1)^n, read modulo [K[f], B].

    The section may be any set-theoretic preimage choice fixing the
    identity; the output is independent of it."""
    f = f_ext.map
    B, A = f.dom, f.cod
    if section is None:
        section = _default_section(f)
    else:
        section = list(section)
    if section[A.identity] != B.identity:
        raise BadSection("section must send the identity to the identity")
    for a in A.elements():
        if f.image_of[section[a]] != a:
            raise BadSection(f"section value at {a} is not a preimage")
    h2a = based_h2(A, cap=cap)
    node = centralised_kernel_structure(f, f_ext.ker)
    kpos = {x: i for i, x in enumerate(f_ext.ker.elements)}
    rows = []
    width = len(node.group.torsion) + node.group.free_rank
    for i in range(h2a.ngens):
        z = h2a.generator_cycle(i)
        x = B.identity
        for col, n in enumerate(z):
            if not n:
                continue
            a, a2 = h2a.basis2[col]
            w = B.mul(
                B.mul(section[a], section[a2]), B.inv(section[A.table[a][a2]])
            )
            x = B.mul(x, B.power(w, n))
        rows.append(list(node.coord_of_source[kpos[x]]))
    return IntMatrix.from_rows(rows, width)


# ---------------------------------------------------------------------------
# the five-term sequence


@dataclass(frozen=True)
class FiveTermSequence:
    """H2(B) -> H2(A) -> K[I1 f] -> H1(B) -> H1(A) -> 0 with explicit maps on
    invariant-factor bases."""

    h2b: FgAbelianGroup
    h2a: FgAbelianGroup
    ki1f: FgAbelianGroup
    h1b: FgAbelianGroup
    h1a: FgAbelianGroup
    map_h2f: IntMatrix
    map_delta2: IntMatrix
    map_gamma1: IntMatrix
    map_h1f: IntMatrix


def five_term(f_ext, cap: int = FIVE_TERM_CAP) -> FiveTermSequence:
    f = f_ext.map
    B, A = f.dom, f.cod
    if B.order > cap or A.order > cap:
        raise OrderLimitExceeded("five-term computation exceeds its cap")
    h2b = based_h2(B, cap=cap)
    h2a = based_h2(A, cap=cap)
    node = centralised_kernel_structure(f, f_ext.ker)
    h1b = h1_structure(B)
    h1a = h1_structure(A)

    # H2(f)
    rows = []
    for i in range(h2b.ngens):
        z = h2b.generator_cycle(i)
        mapped = _map_cycle(f, h2b, h2a, z)
        rows.append(list(h2a.project(mapped)) if h2a.ngens else [])
    map_h2f = IntMatrix.from_rows(rows, h2a.ngens)

    map_delta2 = connecting_delta2(f_ext, cap=cap)

    width_h1b = len(h1b.group.torsion) + h1b.group.free_rank
    rows = [
        list(h1b.coord_of_source[k]) for k in node.gen_source
    ]
    map_gamma1 = IntMatrix.from_rows(rows, width_h1b)

    width_h1a = len(h1a.group.torsion) + h1a.group.free_rank
    rows = [
        list(h1a.coord_of_source[f.image_of[g]]) for g in h1b.gen_source
    ]
    map_h1f = IntMatrix.from_rows(rows, width_h1a)

    return FiveTermSequence(
        h2b.group,
        h2a.group,
        node.group,
        h1b.group,
        h1a.group,
        map_h2f,
        map_delta2,
        map_gamma1,
        map_h1f,
    )


def _elements_of(group: FgAbelianGroup):
    if not group.is_finite():
        raise InvariantViolated("exactness checking needs finite nodes")
    return [tuple(c) for c in group.elements()]


def _apply(M: IntMatrix, coords, dst: FgAbelianGroup):
    out = []
    for j in range(M.cols):
        v = sum(coords[i] * M.entries[i][j] for i in range(M.rows))
        if j < len(dst.torsion):
            v %= dst.torsion[j]
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class ExactnessReport:
    exact_at_h2a: bool
    exact_at_ki1f: bool
    exact_at_h1b: bool
    surjective_end: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.exact_at_h2a
            and self.exact_at_ki1f
            and self.exact_at_h1b
            and self.surjective_end
        )


def check_exactness(seq: FiveTermSequence) -> ExactnessReport:
    """image = kernel at the three interior nodes, surjectivity at the end;
    decided by full element enumeration (nodes are small finite groups)."""
    def im(M, src, dst):
        return {_apply(M, v, dst) for v in _elements_of(src)}

    def ker(M, src, dst):
        zero = tuple([0] * M.cols)
        return {
            v for v in _elements_of(src) if _apply(M, v, dst) == zero
        }

    im_h2f = im(seq.map_h2f, seq.h2b, seq.h2a)
    ker_d2 = ker(seq.map_delta2, seq.h2a, seq.ki1f)
    im_d2 = im(seq.map_delta2, seq.h2a, seq.ki1f)
    ker_g1 = ker(seq.map_gamma1, seq.ki1f, seq.h1b)
    im_g1 = im(seq.map_gamma1, seq.ki1f, seq.h1b)
    ker_h1f = ker(seq.map_h1f, seq.h1b, seq.h1a)
    im_h1f = im(seq.map_h1f, seq.h1b, seq.h1a)
    return ExactnessReport(
        im_h2f == ker_d2,
        im_d2 == ker_g1,
        im_g1 == ker_h1f,
        im_h1f == set(_elements_of(seq.h1a)),
    )
