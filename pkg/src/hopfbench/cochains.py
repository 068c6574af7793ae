"""Normalized 2-cocycle systems over finite groups, in reduced coordinates.

A normalized 2-cocycle c on G with values in a cyclic coefficient group is a
solution of c(g,h) + c(gh,k) = c(h,k) + c(g,hk) with c(1,-) = c(-,1) = 0.
Checking the identity only for triples whose middle entry lies in a
generating set T suffices (Light's associativity test applied to the
extension built from c), and the identity with middle entry t expresses
c(g, t*k) through values at shorter second arguments.  Walking a BFS tree of
the Cayley graph therefore eliminates every unknown c(g,h) with h of word
length > 1, leaving the base unknowns c(g,t) for t in T.  What remains of
the identities is a small integer consistency system; its Smith invariants
determine the cocycle classes for every coefficient modulus at once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolated
from .groups import FiniteGroup, generating_set
from .intlinalg import (
    FgAbelianGroup,
    IntMatrix,
    QuotientBasis,
    hermite_normal_form,
    smith_normal_form,
    snf_diagonal,
    sparse_lattice_basis,
)


@dataclass(frozen=True)
class CocycleSystem:
    """Reduced normalized-2-cocycle data for one group.

    base unknowns: pairs (g, t), g != 1, t in the generating set; every
    cocycle is the unique extension of its restriction to these, and
    ``pair_vector(g, h)`` gives c(g, h) as an integer functional of them."""

    group: FiniteGroup
    gens: tuple[int, ...]
    base_index: dict
    width: int
    _pair_vectors: dict
    consistency: IntMatrix  # Hermite-reduced rows; solutions mod d = Z^2(G, Z/d)
    coboundary: IntMatrix  # delta^1 restricted to base coordinates

    def pair_vector(self, g: int, h: int) -> tuple[int, ...]:
        """c(g, h) as a linear functional on the base unknowns."""
        e = self.group.identity
        if g == e or h == e:
            return (0,) * self.width
        return self._pair_vectors[(g, h)]

    def cocycle_values(self, base: tuple[int, ...], modulus: int) -> dict:
        """Full normalized table {(g, h): value mod modulus} of the cocycle
        with the given base coordinates."""
        G = self.group
        e = G.identity
        values = {}
        for g in G.elements():
            for h in G.elements():
                if g == e or h == e:
                    values[(g, h)] = 0
                else:
                    vec = self._pair_vectors[(g, h)]
                    values[(g, h)] = (
                        sum(a * b for a, b in zip(vec, base)) % modulus
                    )
        return values


def build_cocycle_system(G: FiniteGroup) -> CocycleSystem:
    e = G.identity
    gens = tuple(g for g in generating_set(G) if g != e)
    nonid = [x for x in G.elements() if x != e]
    base_index = {}
    for g in nonid:
        for t in gens:
            base_index[(g, t)] = len(base_index)
    width = len(base_index)

    # BFS tree of the Cayley graph under left multiplication by generators:
    # every h at distance >= 2 factors as h = t * k with k one step closer
    parent: dict[int, tuple[int, int]] = {}
    dist = {e: 0}
    frontier = [e]
    order = []
    while frontier:
        nxt = []
        for k in frontier:
            for t in gens:
                h = G.table[t][k]
                if h not in dist:
                    dist[h] = dist[k] + 1
                    parent[h] = (t, k)
                    order.append(h)
                    nxt.append(h)
        frontier = nxt
    if len(dist) != G.order:
        raise InvariantViolated("generating set does not generate")

    zero = (0,) * width
    vectors: dict[tuple[int, int], tuple[int, ...]] = {}
    for g in nonid:
        for t in gens:
            v = list(zero)
            v[base_index[(g, t)]] = 1
            vectors[(g, t)] = tuple(v)
    for h in order:
        if dist[h] < 2:
            continue
        t, k = parent[h]
        wtk = vectors[(t, k)]
        for g in nonid:
            # c(g, t*k) = c(g, t) + c(g*t, k) - c(t, k)
            gt = G.table[g][t]
            if gt != e:
                v = [a - b for a, b in zip(vectors[(gt, k)], wtk)]
            else:
                v = [-b for b in wtk]
            v[base_index[(g, t)]] += 1
            vectors[(g, h)] = tuple(v)

    # consistency residues of the cocycle identity at (g, t, k)
    rows = set()
    for t in gens:
        for g in nonid:
            base_col = base_index[(g, t)]
            gt = G.table[g][t]
            for k in nonid:
                wtk = vectors[(t, k)]
                if gt != e:
                    row = [a - b for a, b in zip(vectors[(gt, k)], wtk)]
                else:
                    row = [-b for b in wtk]
                tk = G.table[t][k]
                if tk != e:
                    w = vectors[(g, tk)]
                    row = [a - b for a, b in zip(row, w)]
                row[base_col] += 1
                if any(row):
                    rows.add(tuple(row))
    consistency = (
        sparse_lattice_basis(
            ([(c, v) for c, v in enumerate(r) if v] for r in sorted(rows)), width
        )
        if rows
        else IntMatrix.zero(0, width)
    )

    # delta^1 restricted to the base coordinates: row per u != 1 sends the
    # indicator cochain of u to g |-> f(g) - f(g t) + f(t)
    cob_rows = []
    for u in nonid:
        row = list(zero)
        for (g, t), col in base_index.items():
            val = (1 if g == u else 0) + (1 if t == u else 0) - (1 if G.table[g][t] == u else 0)
            row[col] = val
        cob_rows.append(row)
    coboundary = (
        IntMatrix.from_rows(cob_rows, width) if cob_rows else IntMatrix.zero(0, width)
    )

    return CocycleSystem(G, gens, base_index, width, vectors, consistency, coboundary)


_SYSTEM_CACHE: dict[int, tuple[FiniteGroup, CocycleSystem]] = {}


def cocycle_system(G: FiniteGroup) -> CocycleSystem:
    """Cached accessor; system construction is pure in G."""
    hit = _SYSTEM_CACHE.get(id(G))
    if hit is not None and hit[0] is G:
        return hit[1]
    sys_ = build_cocycle_system(G)
    if len(_SYSTEM_CACHE) > 32:
        _SYSTEM_CACHE.clear()
    _SYSTEM_CACHE[id(G)] = (G, sys_)
    return sys_


def solution_lattice(system: CocycleSystem, modulus: int) -> IntMatrix:
    """Basis of {u in Z^width : consistency * u = 0 mod modulus}; contains
    modulus * Z^width."""
    R = system.consistency
    width = system.width
    if R.rows == 0:
        return IntMatrix.identity(width)
    S, U, _ = smith_normal_form(R.transpose())  # rows of U act on u-space
    diag = [
        S.entries[i][i] for i in range(min(S.rows, S.cols)) if S.entries[i][i] != 0
    ]
    from math import gcd

    rows = []
    for i in range(width):
        if i < len(diag):
            scale = modulus // gcd(diag[i], modulus)
        else:
            scale = 1
        rows.append([scale * x for x in U.entries[i]])
    return hermite_normal_form(IntMatrix.from_rows(rows, width))


def cohomology_with_cyclic_coefficients(
    system: CocycleSystem, modulus: int
) -> tuple[FgAbelianGroup, list[tuple[int, ...]]]:
    """H^2(G, Z/modulus) with trivial action, plus one base-coordinate vector
    per canonical generator of the answer (lift a class by
    ``system.cocycle_values``)."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    width = system.width
    if width == 0 or modulus == 1:
        return FgAbelianGroup.trivial(), []
    N = solution_lattice(system, modulus)
    den_rows = [list(r) for r in system.coboundary.entries]
    for j in range(width):
        row = [0] * width
        row[j] = modulus
        den_rows.append(row)
    qb = QuotientBasis.of(N, IntMatrix.from_rows(den_rows, width))
    reps = [tuple(qb.lift(k)) for k in range(qb.ngens)]
    return qb.group, reps


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0 and n:
        n //= p
        v += 1
    return v


def class_size_exponent(system: CocycleSystem, p: int, j: int) -> int:
    """log_p |H^2(G, Z/p^j)| computed from Smith invariants alone."""
    width = system.width
    cons = snf_diagonal(system.consistency)
    cob = snf_diagonal(system.coboundary)
    z2 = j * (width - len(cons)) + sum(min(_vp(d, p), j) for d in cons)
    b2 = sum(j - min(_vp(d, p), j) for d in cob)
    return z2 - b2


def torsion_profile(system: CocycleSystem, p: int, jcap: int = 64) -> list[int]:
    """Multiset of exponents c with one Z/p^c summand each, for the group
    whose Hom/Ext sizes against Z/p^j all match H^2(G, Z/p^j); grows j until
    the size profile stabilizes."""
    prev = 0
    increments = []
    j = 1
    while True:
        f = class_size_exponent(system, p, j)
        inc = f - prev
        if inc < 0 or (increments and inc > increments[-1]):
            raise InvariantViolated("cohomology size profile is not a partition")
        if inc == 0:
            break
        increments.append(inc)
        prev = f
        j += 1
        if j > jcap:
            raise InvariantViolated("cohomology size profile failed to stabilize")
    # increments[j-1] = #{summands with exponent >= j}; take the conjugate
    exponents = []
    for jj, count in enumerate(increments, start=1):
        nxt = increments[jj] if jj < len(increments) else 0
        exponents.extend([jj] * (count - nxt))
    return sorted(exponents, reverse=True)


def full_cocycle_check(G: FiniteGroup, modulus: int, values: dict) -> bool:
    """Brute-force validation of the (normalized) cocycle identity over all
    |G|^3 triples."""
    e = G.identity
    for g in G.elements():
        if values[(e, g)] % modulus or values[(g, e)] % modulus:
            return False
    for g in G.elements():
        for h in G.elements():
            gh = G.table[g][h]
            for k in G.elements():
                lhs = values[(g, h)] + values[(gh, k)]
                rhs = values[(h, k)] + values[(g, G.table[h][k])]
                if (lhs - rhs) % modulus:
                    return False
    return True
