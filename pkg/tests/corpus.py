"""Shared corpus of groups and surjections used across the test suite.

Each corpus entry is (name, Extension, expect) where ``expect`` records
hand-checked structural facts (split or not, central or not for the
abelianization reflector) used by the property suites."""

from dataclasses import dataclass

from hopfbench.extensions import Extension
from hopfbench.groups import (
    GroupHom,
    center,
    cyclic_group,
    derived_subgroup,
    dihedral_group,
    direct_product,
    generated_subgroup,
    quotient,
    standard_group,
)


@dataclass(frozen=True)
class CorpusExtension:
    name: str
    ext: Extension
    split: bool
    central: bool  # for the abelianization reflector


def _quotient_ext(G, N):
    _, proj = quotient(G, N)
    return Extension.of(proj)


def _projection_ext(G, H):
    """direct_product(G, H) ->> G."""
    P = direct_product(G, H)
    f = GroupHom(P, G, tuple(x // H.order for x in P.elements()))
    return Extension.of(f)


def sign_extension():
    """S3 ->> C2 by the parity of permutations."""
    S3 = standard_group("symmetric", 3)
    return _quotient_ext(S3, derived_subgroup(S3))


def q8_over_klein():
    Q8 = standard_group("quaternion8")
    return _quotient_ext(Q8, center(Q8))


def build_corpus():
    corpus = []
    Q8 = standard_group("quaternion8")
    D4 = standard_group("dihedral", 4)
    S3 = standard_group("symmetric", 3)
    A4 = standard_group("alternating", 4)
    C2, C3, C4, C6 = (cyclic_group(n) for n in (2, 3, 4, 6))

    corpus.append(CorpusExtension("Q8->>C2xC2", q8_over_klein(), False, True))
    corpus.append(CorpusExtension("S3->>C2 (sign)", sign_extension(), True, False))
    corpus.append(
        CorpusExtension("D4->>C2xC2", _quotient_ext(D4, center(D4)), False, True)
    )
    corpus.append(
        CorpusExtension(
            "C4->>C2",
            Extension.of(GroupHom(C4, C2, (0, 1, 0, 1))),
            False,
            True,
        )
    )
    corpus.append(
        CorpusExtension(
            "C6->>C3",
            Extension.of(GroupHom(C6, C3, tuple(x % 3 for x in range(6)))),
            True,
            True,
        )
    )
    corpus.append(
        CorpusExtension(
            "C6->>C2",
            Extension.of(GroupHom(C6, C2, tuple(x % 2 for x in range(6)))),
            True,
            True,
        )
    )
    corpus.append(
        CorpusExtension("C2xC3->>C3", _projection_ext(C3, C2), True, True)
    )
    # D4 over a rotation subgroup: kernel C4, not central, split
    rot = next(x for x in D4.elements() if D4.element_order(x) == 4)
    corpus.append(
        CorpusExtension(
            "D4->>C2 (by rotations)",
            _quotient_ext(D4, generated_subgroup(D4, [rot])),
            True,
            False,
        )
    )
    # A4 over its Klein four normal subgroup
    v4 = [x for x in A4.elements() if A4.element_order(x) in (1, 2)]
    corpus.append(
        CorpusExtension(
            "A4->>C3", _quotient_ext(A4, generated_subgroup(A4, v4)), True, False
        )
    )
    corpus.append(
        CorpusExtension(
            "S3->>S3 (identity)",
            Extension.of(GroupHom(S3, S3, tuple(S3.elements()))),
            True,
            True,
        )
    )
    K4 = standard_group("klein4")
    corpus.append(
        CorpusExtension(
            "C2xC2->>C2",
            Extension.of(GroupHom(K4, C2, tuple(x // 2 for x in K4.elements()))),
            True,
            True,
        )
    )
    corpus.append(
        CorpusExtension("C4xC2->>C4", _projection_ext(C4, C2), True, True)
    )
    # Q8 over <i>: kernel C4, neither central nor split
    i_elt = next(x for x in Q8.elements() if Q8.element_order(x) == 4)
    corpus.append(
        CorpusExtension(
            "Q8->>C2",
            _quotient_ext(Q8, generated_subgroup(Q8, [i_elt])),
            False,
            False,
        )
    )
    # C2 x S3 over S3: split central (kernel is the C2 factor)
    corpus.append(
        CorpusExtension("C2xS3->>S3", _projection_ext(S3, C2), True, True)
    )
    return corpus


CORPUS = build_corpus()

CORPUS_GROUPS = {
    "trivial": cyclic_group(1),
    "C2": cyclic_group(2),
    "C3": cyclic_group(3),
    "C4": cyclic_group(4),
    "C6": cyclic_group(6),
    "C2xC2": standard_group("klein4"),
    "C2xC4": direct_product(cyclic_group(2), cyclic_group(4)),
    "C3xC3": direct_product(cyclic_group(3), cyclic_group(3)),
    "C2xC6": direct_product(cyclic_group(2), cyclic_group(6)),
    "S3": standard_group("symmetric", 3),
    "D4": standard_group("dihedral", 4),
    "Q8": standard_group("quaternion8"),
    "D6": dihedral_group(6),
    "A4": standard_group("alternating", 4),
    "C2xD4": direct_product(cyclic_group(2), standard_group("dihedral", 4)),
    "C4xC4": direct_product(cyclic_group(4), cyclic_group(4)),
    "SL23": None,  # filled below
}


def _sl23():
    # 2x2 matrices of determinant 1 over GF(3), as permutations of the 24
    # matrix entries is overkill; build from the Q8 normal subgroup action
    # instead: SL(2,3) = Q8 x| C3.  Use matrices directly via a closure on
    # tuples (a, b, c, d) mod 3 with det 1.
    elements = []
    index = {}
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    if (a * d - b * c) % 3 == 1:
                        index[(a, b, c, d)] = len(elements)
                        elements.append((a, b, c, d))

    def mul(m, n):
        a, b, c, d = m
        e, f, g, h = n
        return (
            (a * e + b * g) % 3,
            (a * f + b * h) % 3,
            (c * e + d * g) % 3,
            (c * f + d * h) % 3,
        )

    table = [
        [index[mul(m, n)] for n in elements] for m in elements
    ]
    from hopfbench.groups import from_multiplication_table

    return from_multiplication_table(table)


CORPUS_GROUPS["SL23"] = _sl23()

# known Schur multipliers, frozen after confirmation by both homology routes
KNOWN_MULTIPLIERS = {
    "trivial": (),
    "C2": (),
    "C3": (),
    "C4": (),
    "C6": (),
    "C2xC2": (2,),
    "C2xC4": (2,),
    "C3xC3": (3,),
    "C2xC6": (2,),
    "S3": (),
    "D4": (2,),
    "Q8": (),
    "A4": (2,),
}
