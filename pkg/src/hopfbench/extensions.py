"""Extensions of finite groups and their centralisation/trivialisation
calculus: two independent centralisation constructions, the trivialisation
pullback, centrality/triviality predicates, the comparison map, the Hopf
quotient, and the double-extension predicate."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .errors import (
    DomainMismatch,
    NotAbelian,
    NotCommutative,
    NotSurjective,
    OrderLimitExceeded,
    Unsupported,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    abelian_invariants,
    commutator_subgroup_pair,
    compose,
    cyclic_group,
    derived_subgroup,
    generating_set,
    hom_from_generator_images,
    hom_from_json,
    identity_hom,
    is_surjective,
    kernel,
    pullback,
    quotient,
    subgroup_embedding,
    trivial_subgroup,
    whole_group,
)
from .intlinalg import FgAbelianGroup

DEFAULT_TABLE_CAP = 5000


@dataclass(frozen=True)
class Extension:
    """A surjective homomorphism B ->> A with its kernel cached."""

    map: GroupHom
    ker: Subgroup

    @staticmethod
    def of(f: GroupHom) -> "Extension":
        if not is_surjective(f):
            raise NotSurjective("an extension must be surjective")
        return Extension(f, kernel(f))

    @property
    def dom(self) -> FiniteGroup:
        return self.map.dom

    @property
    def cod(self) -> FiniteGroup:
        return self.map.cod

    def is_split(self) -> bool:
        """True when the map admits a section homomorphism."""
        return find_section(self.map) is not None


def identity_extension(G: FiniteGroup) -> Extension:
    return Extension.of(identity_hom(G))


@dataclass(frozen=True)
class Reflector:
    """Closed enumeration of reflections onto a subcategory: abelianization
    (onto abelian groups), identity (everything), zero (trivial groups).

    ``unit(G)`` returns the reflected group with the unit map; the unit is
    always surjective and reflecting twice changes nothing."""

    tag: str

    def __post_init__(self):
        if self.tag not in ("abelianization", "identity", "zero"):
            raise Unsupported(f"unknown reflector {self.tag!r}")

    def unit(self, G: FiniteGroup) -> tuple[FiniteGroup, GroupHom]:
        if self.tag == "identity":
            return G, identity_hom(G)
        if self.tag == "zero":
            T = cyclic_group(1)
            return T, GroupHom(G, T, (0,) * G.order)
        return quotient(G, derived_subgroup(G))

    def unit_kernel(self, G: FiniteGroup) -> Subgroup:
        """The subobject J(G) = K[unit at G]."""
        if self.tag == "identity":
            return trivial_subgroup(G)
        if self.tag == "zero":
            return whole_group(G)
        return derived_subgroup(G)

    def centralising_subgroup(self, f: Extension) -> Subgroup:
        """The normal subgroup of dom f killed by centralisation."""
        if self.tag == "identity":
            return trivial_subgroup(f.dom)
        if self.tag == "zero":
            return f.ker
        return commutator_subgroup_pair(
            f.dom, f.ker, whole_group(f.dom)
        )


ABELIANIZATION = Reflector("abelianization")
IDENTITY = Reflector("identity")
ZERO = Reflector("zero")

REFLECTORS = {
    "abelianization": ABELIANIZATION,
    "identity": IDENTITY,
    "zero": ZERO,
}


def _induced_on_quotient(rho: GroupHom, f: GroupHom) -> GroupHom:
    """The map g with g o rho = f, for surjective rho whose kernel dies in f."""
    images = [None] * rho.cod.order
    for b in rho.dom.elements():
        q = rho.image_of[b]
        v = f.image_of[b]
        if images[q] is None:
            images[q] = v
        elif images[q] != v:
            raise ValueError("map does not factor through the quotient")
    return GroupHom(rho.cod, f.cod, tuple(images))


def centralise(f: Extension, R: Reflector) -> tuple[Extension, GroupHom]:
    """Universal central quotient of f: the extension dom f / N -> cod f
    where N is the reflector's centralising subgroup, plus the quotient map.

    For the abelianization reflector N = [K[f], B]; the identity reflector
    returns f unchanged; the zero reflector quotients by all of K[f]."""
    N = R.centralising_subgroup(f)
    Q, rho = quotient(f.dom, N)
    g = _induced_on_quotient(rho, f.map)
    return Extension.of(g), rho


def centralise_via_kernel_pair(
    f: Extension, R: Reflector, cap: int = DEFAULT_TABLE_CAP
) -> tuple[Extension, GroupHom]:
    """Centralisation by the generic kernel-pair construction: build the
    kernel pair R[f], take the reflector's unit kernel there, intersect with
    the kernel of the first projection, push forward along the second
    projection, and quotient.

    Independent of :func:`centralise`; the two must agree on every input."""
    if (f.dom.order * f.dom.order) // max(1, f.cod.order) > cap:
        raise OrderLimitExceeded("kernel pair exceeds the table cap")
    P, pr1, pr2 = pullback(f.map, f.map)
    JP = R.unit_kernel(P)
    k1 = kernel(pr1)
    j1_elements = tuple(sorted(set(JP.elements) & set(k1.elements)))
    j1 = Subgroup(P, j1_elements)
    pushed = Subgroup(f.dom, tuple(sorted({pr2.image_of[x] for x in j1.elements})))
    Q, rho = quotient(f.dom, pushed)
    g = _induced_on_quotient(rho, f.map)
    return Extension.of(g), rho


def reflect_extension(f: Extension, R: Reflector) -> tuple[GroupHom, GroupHom, GroupHom]:
    """Apply the reflector to both ends of f: returns (If, eta_B, eta_A) with
    If o eta_B = eta_A o f."""
    IB, eta_b = R.unit(f.dom)
    IA, eta_a = R.unit(f.cod)
    If = _induced_on_quotient(eta_b, compose(eta_a, f.map))
    return If, eta_b, eta_a


def _pair_index(P: FiniteGroup, pr1: GroupHom, pr2: GroupHom):
    return {
        (pr1.image_of[x], pr2.image_of[x]): x for x in P.elements()
    }


def trivialise(f: Extension, R: Reflector) -> tuple[Extension, GroupHom]:
    """Trivialisation of f: the pullback of the reflected extension along the
    unit at the codomain, plus the comparison map from the centralisation.

    Returns (T1f, r1) where T1f : T1[f] -> cod f and r1 : I1[f] -> T1[f] is
    surjective."""
    If, eta_b, eta_a = reflect_extension(f, R)
    P, prA, prI = pullback(eta_a, If)
    t1f = Extension.of(prA)
    idx = _pair_index(P, prA, prI)
    cent, rho = centralise(f, R)
    images = [None] * cent.dom.order
    for b in f.dom.elements():
        images[rho.image_of[b]] = idx[(f.map.image_of[b], eta_b.image_of[b])]
    r1 = GroupHom(cent.dom, P, tuple(images))
    return t1f, r1


def comparison_to_trivialisation(f: Extension, R: Reflector) -> GroupHom:
    """The canonical map dom f -> T1[f], b |-> (f(b), eta(b))."""
    If, eta_b, eta_a = reflect_extension(f, R)
    P, prA, prI = pullback(eta_a, If)
    idx = _pair_index(P, prA, prI)
    return GroupHom(
        f.dom,
        P,
        tuple(
            idx[(f.map.image_of[b], eta_b.image_of[b])] for b in f.dom.elements()
        ),
    )


def is_central(f: Extension, R: Reflector) -> bool:
    """Centrality of f for the reflector's Galois structure.

    Abelianization: the commutator criterion [K[f], B] = 1.  Identity:
    always true.  Zero: true exactly when f is an isomorphism."""
    if R.tag == "identity":
        return True
    if R.tag == "zero":
        return f.ker.order == 1
    return R.centralising_subgroup(f).order == 1


def is_trivial(f: Extension, R: Reflector) -> bool:
    """True when the canonical comparison dom f -> T1[f] is an isomorphism."""
    cmp_map = comparison_to_trivialisation(f, R)
    return cmp_map.dom.order == cmp_map.cod.order and len(set(cmp_map.image_of)) == cmp_map.dom.order


def hopf_quotient(f: Extension, R: Reflector) -> FgAbelianGroup:
    """Kernel of the comparison map I1[f] -> T1[f], in invariant-factor form.

    For the abelianization reflector this is ([B,B] & K[f]) / [K[f],B]; the
    result always lies in the reflector's subcategory, hence is abelian."""
    _, r1 = trivialise(f, R)
    K = kernel(r1)
    S, _ = subgroup_embedding(K)
    if not S.is_abelian():
        raise NotAbelian("Hopf quotient came out non-abelian; internal error")
    return abelian_invariants(S)


def hopf_numerator_denominator(f: Extension, R: Reflector) -> tuple[Subgroup, Subgroup]:
    """The subgroups (J(B) & K[f], centralising subgroup) of dom f whose
    quotient is the Hopf quotient; provided for cross-checking."""
    JB = R.unit_kernel(f.dom)
    num = tuple(sorted(set(JB.elements) & set(f.ker.elements)))
    return Subgroup(f.dom, num), R.centralising_subgroup(f)


@dataclass(frozen=True)
class ExtensionSquare:
    """A commutative square of homomorphisms:

        B' --top--> A'
        |           |
        left        right
        v           v
        B --bottom--> A
    """

    top: GroupHom
    bottom: GroupHom
    left: GroupHom
    right: GroupHom

    def __post_init__(self):
        if (
            self.top.dom != self.left.dom
            or self.top.cod != self.right.dom
            or self.left.cod != self.bottom.dom
            or self.right.cod != self.bottom.cod
        ):
            raise DomainMismatch("square sides do not share corners")
        lhs = compose(self.right, self.top)
        rhs = compose(self.bottom, self.left)
        if lhs.image_of != rhs.image_of:
            raise NotCommutative("square does not commute")


def is_double_extension(sq: ExtensionSquare) -> bool:
    """True when all four sides are surjective and the comparison from the
    initial corner to the pullback of bottom and right is surjective too."""
    if not all(
        is_surjective(side) for side in (sq.top, sq.bottom, sq.left, sq.right)
    ):
        return False
    P, prB, prA = pullback(sq.bottom, sq.right)
    idx = _pair_index(P, prB, prA)
    hit = {
        idx[(sq.left.image_of[x], sq.top.image_of[x])] for x in sq.top.dom.elements()
    }
    return len(hit) == P.order


# ---------------------------------------------------------------------------
# sections and isomorphism over the base


def find_section(f: GroupHom) -> GroupHom | None:
    """A homomorphic section of a surjection, or None; backtracking over
    generator images constrained to the fibers."""
    A = f.cod
    B = f.dom
    gens = generating_set(A)
    if not gens:
        return GroupHom(A, B, (B.identity,) * A.order)
    fibers = []
    for g in gens:
        fiber = [b for b in B.elements() if f.image_of[b] == g]
        fibers.append(fiber)
    for choice in product(*fibers):
        try:
            s = hom_from_generator_images(A, B, gens, list(choice))
        except ValueError:
            continue
        if all(f.image_of[s.image_of[a]] == a for a in A.elements()):
            return s
    return None


def isomorphism_over_base(e1: Extension, e2: Extension) -> GroupHom | None:
    """An isomorphism dom e1 -> dom e2 commuting with the two maps to the
    common codomain, or None; bounded search over generator images."""
    if e1.cod != e2.cod:
        raise DomainMismatch("extensions must share a codomain")
    if e1.dom.order != e2.dom.order:
        return None
    B1, B2 = e1.dom, e2.dom
    gens = generating_set(B1)
    if not gens:
        return GroupHom(B1, B2, (B2.identity,) * B1.order)
    fibers = []
    for g in gens:
        target = e1.map.image_of[g]
        order_g = B1.element_order(g)
        fibers.append(
            [
                y
                for y in B2.elements()
                if e2.map.image_of[y] == target and B2.element_order(y) == order_g
            ]
        )
    for choice in product(*fibers):
        try:
            phi = hom_from_generator_images(B1, B2, gens, list(choice))
        except ValueError:
            continue
        if len(set(phi.image_of)) != B1.order:
            continue
        if all(
            e2.map.image_of[phi.image_of[b]] == e1.map.image_of[b]
            for b in B1.elements()
        ):
            return phi
    return None


# ---------------------------------------------------------------------------
# extension files


def extension_from_json(obj) -> Extension:
    """Extension file: a homomorphism file plus "surjective": true; the
    loader re-verifies surjectivity."""
    if not obj.get("surjective", False):
        raise NotSurjective("extension file must assert surjectivity")
    f = hom_from_json(obj)
    return Extension.of(f)


def load_extension(path) -> Extension:
    with open(path, "r", encoding="utf-8") as fh:
        return extension_from_json(json.load(fh))
