"""Central extensions from 2-cocycles: enumeration of the central extensions
of G by a finite abelian coefficient group, stem-extension search, and
universal central extensions of perfect groups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .barhomology import h2
from .cochains import (
    cocycle_system,
    cohomology_with_cyclic_coefficients,
    full_cocycle_check,
)
from .errors import (
    InvalidCocycle,
    NotFound,
    NotPerfect,
    OrderLimitExceeded,
)
from .extensions import Extension, identity_extension
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    derived_subgroup,
    is_perfect,
    _trusted_group,
)
from .intlinalg import FgAbelianGroup

DEFAULT_COCYCLE_CAP = 4096
DEFAULT_CLASS_CAP = 4096


@dataclass(frozen=True)
class Cocycle2:
    """Normalized 2-cocycle on G with values in a finite abelian group with
    trivial action; values are coordinate tuples of the coefficient group."""

    group: FiniteGroup
    coeff: FgAbelianGroup
    values: dict

    def validate(self):
        """Normalization and the cocycle identity over all triples."""
        if not self.coeff.is_finite():
            raise InvalidCocycle("coefficient group must be finite")
        d = self.coeff.torsion
        G = self.group
        e = G.identity
        width = len(d)

        def norm(v):
            return tuple(x % d[i] for i, x in enumerate(v))

        zero = (0,) * width
        for g in G.elements():
            if norm(self.values[(e, g)]) != zero or norm(self.values[(g, e)]) != zero:
                raise InvalidCocycle("cocycle is not normalized")
        for g in G.elements():
            for h in G.elements():
                gh = G.table[g][h]
                vgh = self.values[(g, h)]
                for k in G.elements():
                    lhs = tuple(
                        a + b for a, b in zip(vgh, self.values[(gh, k)])
                    )
                    rhs = tuple(
                        a + b
                        for a, b in zip(
                            self.values[(h, k)], self.values[(g, G.table[h][k])]
                        )
                    )
                    if norm(lhs) != norm(rhs):
                        raise InvalidCocycle(f"identity fails at ({g}, {h}, {k})")


def _zero_cocycle(G: FiniteGroup, A: FgAbelianGroup) -> Cocycle2:
    zero = (0,) * len(A.torsion)
    return Cocycle2(
        G, A, {(g, h): zero for g in G.elements() for h in G.elements()}
    )


def h2_cohomology(
    G: FiniteGroup, A: FgAbelianGroup, cap: int = DEFAULT_COCYCLE_CAP
) -> tuple[FgAbelianGroup, list[Cocycle2]]:
    """H^2(G, A) with trivial action, plus one normalized cocycle per
    canonical generator of the answer.

    Solved one invariant factor of A at a time over Z/d_i, then assembled as
    a direct sum."""
    if not A.is_finite():
        raise InvalidCocycle("coefficient group must be finite")
    if G.order * max(1, A.order()) > cap:
        raise OrderLimitExceeded("cocycle computation exceeds the cap")
    if G.order == 1 or A.order() == 1:
        return FgAbelianGroup.trivial(), []
    system = cocycle_system(G)
    width = len(A.torsion)
    factors: list[int] = []
    gen_tables: list[dict] = []
    for i, d in enumerate(A.torsion):
        grp, reps = cohomology_with_cyclic_coefficients(system, d)
        factors.extend(grp.torsion)
        for base in reps:
            vals = system.cocycle_values(base, d)
            table = {}
            for key, v in vals.items():
                coords = [0] * width
                coords[i] = v
                table[key] = tuple(coords)
            gen_tables.append(table)
    group = FgAbelianGroup.from_factor_multiset(factors)
    reps = [Cocycle2(G, A, t) for t in gen_tables]
    return group, reps


def _combine_tables(G: FiniteGroup, A: FgAbelianGroup, tables, coeffs) -> dict:
    width = len(A.torsion)
    d = A.torsion
    out = {}
    for g in G.elements():
        for h in G.elements():
            acc = [0] * width
            for c, t in zip(coeffs, tables):
                v = t[(g, h)]
                for i in range(width):
                    acc[i] += c * v[i]
            out[(g, h)] = tuple(acc[i] % d[i] for i in range(width))
    return out


def all_cocycle_classes(
    G: FiniteGroup,
    A: FgAbelianGroup,
    cap: int = DEFAULT_COCYCLE_CAP,
    class_cap: int = DEFAULT_CLASS_CAP,
) -> tuple[FgAbelianGroup, list[Cocycle2]]:
    """One representative per cohomology class, enumerated in lexicographic
    coordinate order over the canonical generators of H^2(G, A)."""
    grp, gens = h2_cohomology(G, A, cap=cap)
    if grp.order() > class_cap:
        raise OrderLimitExceeded("too many cohomology classes to enumerate")
    if not gens:
        return grp, [_zero_cocycle(G, A)]
    tables = [c.values for c in gens]
    reps = []
    for coeffs in product(*(range(d) for d in grp.torsion)):
        reps.append(Cocycle2(G, A, _combine_tables(G, A, tables, coeffs)))
    return grp, reps


def extension_from_cocycle(
    G: FiniteGroup, A: FgAbelianGroup, c: Cocycle2
) -> Extension:
    """The central extension of G by A with multiplication
    (a, g)(a', g') = (a + a' + c(g, g'), g g'), as a table group with the
    projection onto G."""
    if c.group != G or c.coeff != A:
        raise InvalidCocycle("cocycle does not match the given data")
    c.validate()
    d = A.torsion
    width = len(d)
    avals = A.elements()
    aindex = {a: i for i, a in enumerate(avals)}
    n = G.order
    table = []
    for a in avals:
        for g in G.elements():
            row = []
            for a2 in avals:
                for g2 in G.elements():
                    cc = c.values[(g, g2)]
                    s = tuple(
                        (a[i] + a2[i] + cc[i]) % d[i] for i in range(width)
                    )
                    row.append(aindex[s] * n + G.table[g][g2])
            table.append(row)
    zero = (0,) * width
    E = _trusted_group(table, aindex[zero] * n + G.identity)
    proj = GroupHom(E, G, tuple(x % n for x in range(E.order)))
    return Extension.of(proj)


def kernel_injection(A: FgAbelianGroup, ext: Extension) -> dict:
    """Map coefficient coordinates to kernel elements of an extension built
    by :func:`extension_from_cocycle`."""
    n = ext.cod.order
    e = ext.cod.identity
    avals = A.elements()
    return {a: i * n + e for i, a in enumerate(avals)}


def enumerate_central_extensions(
    G: FiniteGroup, A: FgAbelianGroup, cap: int = DEFAULT_COCYCLE_CAP
) -> list[Extension]:
    """All central extensions of G by A up to equivalence over G and A: one
    per cohomology class, pairwise non-equivalent, complete."""
    _, reps = all_cocycle_classes(G, A, cap=cap)
    return [extension_from_cocycle(G, A, c) for c in reps]


def _kernel_subgroup(A: FgAbelianGroup, ext: Extension) -> Subgroup:
    inj = kernel_injection(A, ext)
    return Subgroup(ext.dom, tuple(sorted(inj.values())))


def find_stem_extension(G: FiniteGroup, cap: int = DEFAULT_COCYCLE_CAP) -> Extension:
    """A stem extension of G: central, kernel inside the derived subgroup of
    the middle group, kernel isomorphic to h2(G).

    Iterates the cocycle classes with coefficients h2(G) in their canonical
    enumeration order and returns the first stem hit; existence is
    guaranteed, so exhausting the search signals a bug (NotFound)."""
    M = h2(G)
    if M.is_trivial():
        return identity_extension(G)
    _, reps = all_cocycle_classes(G, M, cap=cap)
    for c in reps:
        ext = extension_from_cocycle(G, M, c)
        K = _kernel_subgroup(M, ext)
        derived = set(derived_subgroup(ext.dom).elements)
        if set(K.elements) <= derived:
            return ext
    raise NotFound("no stem extension among the cocycle classes")


def universal_central_extension(
    G: FiniteGroup, cap: int = DEFAULT_COCYCLE_CAP
) -> Extension:
    """The universal central extension of a perfect group: the stem
    extension with perfect middle group; its kernel realizes h2(G)."""
    if not is_perfect(G):
        raise NotPerfect("universal central extensions need a perfect group")
    M = h2(G)
    if M.is_trivial():
        return identity_extension(G)
    _, reps = all_cocycle_classes(G, M, cap=cap)
    for c in reps:
        ext = extension_from_cocycle(G, M, c)
        if not is_perfect(ext.dom):
            continue
        K = _kernel_subgroup(M, ext)
        derived = set(derived_subgroup(ext.dom).elements)
        if set(K.elements) <= derived:
            return ext
    raise NotFound("no perfect stem cover among the cocycle classes")
