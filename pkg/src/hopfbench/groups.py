"""Finite groups as multiplication tables, homomorphisms, and the
subgroup/quotient/commutator calculus.

Elements are indices 0..order-1.  Tables are immutable; all operations are
pure.  The table representation is uniform and supports quotients and
pullbacks directly; permutation input is a constructor convenience."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce

from .errors import (
    DomainMismatch,
    NotAbelian,
    NotAGroup,
    NotAPermutation,
    NotNormal,
    OrderLimitExceeded,
    Unsupported,
)
from .intlinalg import CokernelBasis, FgAbelianGroup, IntMatrix, hermite_normal_form

DEFAULT_ORDER_CAP = 5000


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a][b]`` is the index of a*b; ``identity`` is the index of the
    neutral element.  ``generator_hint`` records a known generating set when
    the constructor has one (permutation closures, standard groups, ...)."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    generator_hint: tuple[int, ...] = ()

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        e = self.identity
        row = self.table[a]
        for b in range(self.order):
            if row[b] == e:
                return b
        raise NotAGroup("inverses", f"element {a} has no inverse")

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def commutator(self, a: int, b: int) -> int:
        """a * b * a^-1 * b^-1."""
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        result = self.identity
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def element_order(self, a: int) -> int:
        n = 1
        x = a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        t = self.table
        return all(
            t[a][b] == t[b][a] for a in range(self.order) for b in range(self.order)
        )

    def order_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_order(a) for a in range(self.order)))


def _trusted_group(table, identity: int, generator_hint=()) -> FiniteGroup:
    """Wrap a table that is a group by construction (no axiom re-check)."""
    table = tuple(tuple(row) for row in table)
    return FiniteGroup(len(table), table, identity, tuple(generator_hint))


def from_multiplication_table(table) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a FiniteGroup.

    Raises NotAGroup naming the first violated axiom (shape, latin-square,
    identity, inverses, associativity); associativity is checked by the full
    triple loop."""
    table = [list(row) for row in table]
    n = len(table)
    if n == 0:
        raise NotAGroup("shape", "empty table")
    for row in table:
        if len(row) != n:
            raise NotAGroup("shape", "table is not square")
        for x in row:
            if not (0 <= x < n):
                raise NotAGroup("shape", f"entry {x} out of range")
    for a in range(n):
        if sorted(table[a]) != list(range(n)):
            raise NotAGroup("latin-square", f"row {a} is not a permutation")
        if sorted(table[b][a] for b in range(n)) != list(range(n)):
            raise NotAGroup("latin-square", f"column {a} is not a permutation")
    identity = None
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("identity", "no two-sided identity element")
    for a in range(n):
        if not any(table[a][b] == identity for b in range(n)):
            raise NotAGroup("inverses", f"element {a} has no inverse")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise NotAGroup(
                        "associativity", f"({a}*{b})*{c} != {a}*({b}*{c})"
                    )
    return _trusted_group(table, identity)


# ---------------------------------------------------------------------------
# permutation input


def _compose_perm(p, q):
    """(p o q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


def from_permutations(degree: int, generators, cap: int = DEFAULT_ORDER_CAP):
    """Closure of permutation generators; returns (group, labels) where
    labels[i] is the permutation of element i."""
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if sorted(g) != list(range(degree)):
            raise NotAPermutation(f"{g} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    identity = tuple(range(degree))
    index = {identity: 0}
    elements = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose_perm(p, g)
                if q not in index:
                    if len(elements) >= cap:
                        raise OrderLimitExceeded(
                            f"closure exceeded the order cap {cap}"
                        )
                    index[q] = len(elements)
                    elements.append(q)
                    nxt.append(q)
        frontier = nxt
    n = len(elements)
    table = [
        [index[_compose_perm(elements[a], elements[b])] for b in range(n)]
        for a in range(n)
    ]
    hint = tuple(index[g] for g in gens)
    return _trusted_group(table, 0, hint), elements


# ---------------------------------------------------------------------------
# standard groups


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise Unsupported("cyclic group order must be >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return _trusted_group(table, 0, (1 % n,) if n > 1 else ())


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order

    def idx(a, x):
        return a * m + x

    table = [
        [
            idx(G.table[a][b], H.table[x][y])
            for b in range(n)
            for y in range(m)
        ]
        for a in range(n)
        for x in range(m)
    ]
    hint = tuple(idx(g, H.identity) for g in G.generator_hint) + tuple(
        idx(G.identity, h) for h in H.generator_hint
    )
    return _trusted_group(table, idx(G.identity, H.identity), hint)


def _quaternion8() -> FiniteGroup:
    # elements: (sign, axis) with axis in 1,i,j,k -> index 2*axis + (sign<0)
    basis_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(a, x):
        sa, ba = 1 - 2 * (a % 2), a // 2
        sx, bx = 1 - 2 * (x % 2), x // 2
        s, b = basis_mul[(ba, bx)]
        s *= sa * sx
        return 2 * b + (0 if s > 0 else 1)

    table = [[mul(a, x) for x in range(8)] for a in range(8)]
    return _trusted_group(table, 0, (2, 4))  # i and j generate


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    if n < 1:
        raise Unsupported("dihedral parameter must be >= 1")
    if n == 1:
        return cyclic_group(2)
    if n == 2:
        return direct_product(cyclic_group(2), cyclic_group(2))
    rot = tuple((i + 1) % n for i in range(n))
    flip = tuple((-i) % n for i in range(n))
    return from_permutations(n, [rot, flip])[0]


def symmetric_group(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise Unsupported("symmetric parameter must be >= 1")
    if n == 1:
        return cyclic_group(1)
    cycle = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return from_permutations(n, [swap, cycle], cap=cap)[0]


def alternating_group(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 0:
        raise Unsupported("alternating parameter must be >= 0")
    if n < 3:
        return cyclic_group(1)
    three = list(range(n))
    three[0], three[1], three[2] = three[1], three[2], three[0]
    if n % 2:
        big = tuple(list(range(1, n)) + [0])
    else:
        big = tuple([0] + list(range(2, n)) + [1])  # (n-1)-cycle fixing 0
    if n == 3:
        return from_permutations(n, [tuple(three)], cap=cap)[0]
    return from_permutations(n, [tuple(three), big], cap=cap)[0]


def standard_group(name: str, *params) -> FiniteGroup:
    """Catalog constructor: cyclic n, dihedral n, quaternion8, symmetric n,
    alternating n, klein4, direct_product(spec, spec, ...) where each nested
    spec is a (name, *params) sequence."""
    name = name.lower()
    if name == "cyclic":
        return cyclic_group(int(params[0]))
    if name == "dihedral":
        return dihedral_group(int(params[0]))
    if name == "quaternion8":
        return _quaternion8()
    if name == "symmetric":
        return symmetric_group(int(params[0]))
    if name == "alternating":
        return alternating_group(int(params[0]))
    if name == "klein4":
        return direct_product(cyclic_group(2), cyclic_group(2))
    if name == "trivial":
        return cyclic_group(1)
    if name == "direct_product":
        if not params:
            return cyclic_group(1)
        factors = [standard_group(spec[0], *spec[1:]) for spec in params]
        return reduce(direct_product, factors)
    raise Unsupported(f"unknown standard group {name!r}")


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted element set inside a parent group."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        G = self.parent
        elems = self.elements
        if tuple(sorted(set(elems))) != elems:
            raise ValueError("subgroup elements must be sorted and distinct")
        s = set(elems)
        if G.identity not in s:
            raise ValueError("subgroup must contain the identity")
        for a in elems:
            if G.inv(a) not in s:
                raise ValueError("subgroup not closed under inverse")
            for b in elems:
                if G.table[a][b] not in s:
                    raise ValueError("subgroup not closed under product")

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, x: int) -> bool:
        return x in set(self.elements)

    def is_normal(self) -> bool:
        G = self.parent
        s = set(self.elements)
        return all(G.conj(g, x) in s for g in G.elements() for x in self.elements)

    def is_central(self) -> bool:
        G = self.parent
        return all(
            G.table[x][g] == G.table[g][x] for x in self.elements for g in G.elements()
        )

    def is_abelian(self) -> bool:
        G = self.parent
        return all(
            G.table[a][b] == G.table[b][a] for a in self.elements for b in self.elements
        )


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def generated_subgroup(G: FiniteGroup, seed) -> Subgroup:
    """Smallest subgroup containing the seed elements.

    Words in the generators suffice: in a finite group the generated
    submonoid is already a subgroup."""
    gens = sorted(set(seed))
    elems = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                p = G.table[a][s]
                if p not in elems:
                    elems.add(p)
                    nxt.append(p)
        frontier = nxt
    return Subgroup(G, tuple(sorted(elems)))


def normal_closure(G: FiniteGroup, seed) -> Subgroup:
    """Smallest normal subgroup of G containing the seed elements."""
    conjugates = {G.conj(g, s) for s in seed for g in G.elements()}
    return generated_subgroup(G, conjugates)


def center(G: FiniteGroup) -> Subgroup:
    elems = tuple(
        x
        for x in G.elements()
        if all(G.table[x][g] == G.table[g][x] for g in G.elements())
    )
    return Subgroup(G, elems)


def commutator_subgroup_pair(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """Subgroup generated by the commutators [h, k] for h in H, k in K."""
    if H.parent != G or K.parent != G:
        raise DomainMismatch("subgroup arguments must live in G")
    comms = {G.commutator(h, k) for h in H.elements for k in K.elements}
    return generated_subgroup(G, comms)


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    return commutator_subgroup_pair(G, whole_group(G), whole_group(G))


def is_perfect(G: FiniteGroup) -> bool:
    return derived_subgroup(G).order == G.order


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    """Group homomorphism dom -> cod given by its full element map."""

    dom: FiniteGroup
    cod: FiniteGroup
    image_of: tuple[int, ...]

    def __post_init__(self):
        if len(self.image_of) != self.dom.order:
            raise ValueError("image_of must cover the whole domain")
        for x in self.image_of:
            if not (0 <= x < self.cod.order):
                raise ValueError("image out of range")
        if self.image_of[self.dom.identity] != self.cod.identity:
            raise ValueError("homomorphism must preserve the identity")
        td, tc, f = self.dom.table, self.cod.table, self.image_of
        for a in range(self.dom.order):
            fa = f[a]
            for b in range(self.dom.order):
                if f[td[a][b]] != tc[fa][f[b]]:
                    raise ValueError(f"not multiplicative at ({a}, {b})")

    def __call__(self, x: int) -> int:
        return self.image_of[x]


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)))


def compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """g after f."""
    if f.cod != g.dom:
        raise DomainMismatch("cod(f) must equal dom(g)")
    return GroupHom(f.dom, g.cod, tuple(g.image_of[x] for x in f.image_of))


def kernel(f: GroupHom) -> Subgroup:
    e = f.cod.identity
    return Subgroup(
        f.dom, tuple(x for x in f.dom.elements() if f.image_of[x] == e)
    )


def image(f: GroupHom) -> Subgroup:
    return Subgroup(f.cod, tuple(sorted(set(f.image_of))))


def is_surjective(f: GroupHom) -> bool:
    return len(set(f.image_of)) == f.cod.order


def is_injective(f: GroupHom) -> bool:
    return len(set(f.image_of)) == f.dom.order


def is_isomorphism(f: GroupHom) -> bool:
    return f.dom.order == f.cod.order and is_surjective(f)


def hom_from_generator_images(G: FiniteGroup, H: FiniteGroup, gens, images) -> GroupHom:
    """Extend generator images to a homomorphism by BFS over words; raises if
    the seed does not generate G or the extension is inconsistent."""
    gens = list(gens)
    images = list(images)
    if len(gens) != len(images):
        raise ValueError("generator/image length mismatch")
    img: dict[int, int] = {G.identity: H.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g, h in zip(gens, images):
                p = G.table[a][g]
                q = H.table[img[a]][h]
                if p in img:
                    if img[p] != q:
                        raise ValueError("generator images are inconsistent")
                else:
                    img[p] = q
                    nxt.append(p)
        frontier = nxt
    if len(img) != G.order:
        raise ValueError("seed elements do not generate the domain")
    return GroupHom(G, H, tuple(img[x] for x in range(G.order)))


# ---------------------------------------------------------------------------
# quotients and pullbacks


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup, with the projection; cosets are ordered
    by their minimal representative, so the construction is deterministic."""
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    rep_of = {}
    for g in G.elements():
        if g in rep_of:
            continue
        coset = sorted(G.table[g][x] for x in N.elements)
        r = coset[0]
        for c in coset:
            rep_of[c] = r
    reps = sorted(set(rep_of.values()))
    index = {r: i for i, r in enumerate(reps)}
    table = [
        [index[rep_of[G.table[a][b]]] for b in reps]
        for a in reps
    ]
    Q = _trusted_group(table, index[rep_of[G.identity]])
    proj = GroupHom(G, Q, tuple(index[rep_of[g]] for g in G.elements()))
    return Q, proj


def pullback(f: GroupHom, g: GroupHom) -> tuple[FiniteGroup, GroupHom, GroupHom]:
    """Fibre product {(b, c) : f(b) = g(c)} with its two projections."""
    if f.cod != g.cod:
        raise DomainMismatch("pullback needs a common codomain")
    pairs = [
        (b, c)
        for b in f.dom.elements()
        for c in g.dom.elements()
        if f.image_of[b] == g.image_of[c]
    ]
    index = {p: i for i, p in enumerate(pairs)}
    table = [
        [index[(f.dom.table[b][b2], g.dom.table[c][c2])] for (b2, c2) in pairs]
        for (b, c) in pairs
    ]
    P = _trusted_group(table, index[(f.dom.identity, g.dom.identity)])
    pr1 = GroupHom(P, f.dom, tuple(b for (b, _) in pairs))
    pr2 = GroupHom(P, g.dom, tuple(c for (_, c) in pairs))
    return P, pr1, pr2


def subgroup_embedding(H: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """The subgroup as a standalone group plus its inclusion hom."""
    G = H.parent
    index = {x: i for i, x in enumerate(H.elements)}
    table = [
        [index[G.table[a][b]] for b in H.elements] for a in H.elements
    ]
    S = _trusted_group(table, index[G.identity])
    incl = GroupHom(S, G, H.elements)
    return S, incl


# ---------------------------------------------------------------------------
# abelian structure


def _small_generating_set(G: FiniteGroup) -> list[int]:
    if G.generator_hint:
        hint = [g for g in G.generator_hint if g != G.identity]
        if hint and generated_subgroup(G, hint).order == G.order:
            return hint
    gens: list[int] = []
    current = {G.identity}
    by_order = sorted(G.elements(), key=lambda x: -G.element_order(x))
    while len(current) < G.order:
        nxt = next(x for x in by_order if x not in current)
        gens.append(nxt)
        current = set(generated_subgroup(G, gens).elements)
    return gens


def generating_set(G: FiniteGroup) -> list[int]:
    """A small generating set (the constructor's own, when known)."""
    return _small_generating_set(G)


@dataclass(frozen=True)
class AbelianStructure:
    """Invariant-factor coordinates on a finite abelian group: an explicit
    isomorphism G -> Z/d_1 x ... x Z/d_r."""

    group: FgAbelianGroup
    coords: tuple[tuple[int, ...], ...]  # element index -> coordinates
    gen_elements: tuple[int, ...]  # canonical generator -> element index

    def coord_of(self, x: int) -> tuple[int, ...]:
        return self.coords[x]


def abelian_structure(G: FiniteGroup) -> AbelianStructure:
    """Coordinates for a finite abelian group via Smith reduction of the
    relation lattice of a generating set."""
    if not G.is_abelian():
        raise NotAbelian("group is not abelian")
    gens = _small_generating_set(G)
    s = len(gens)
    if s == 0:
        return AbelianStructure(FgAbelianGroup.trivial(), ((),) * G.order, ())
    # BFS expression vectors for every element
    word: dict[int, tuple[int, ...]] = {G.identity: (0,) * s}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for i, g in enumerate(gens):
                p = G.table[a][g]
                if p not in word:
                    w = list(word[a])
                    w[i] += 1
                    word[p] = tuple(w)
                    nxt.append(p)
        frontier = nxt
    # Schreier generators of the relation lattice ker(Z^s -> G)
    rel_rows = []
    for h in G.elements():
        wh = word[h]
        for i, g in enumerate(gens):
            p = G.table[h][g]
            row = [a - b for a, b in zip(wh, word[p])]
            row[i] += 1
            if any(row):
                rel_rows.append(row)
    rels = (
        hermite_normal_form(IntMatrix.from_rows(rel_rows, s))
        if rel_rows
        else IntMatrix.zero(0, s)
    )
    cb = CokernelBasis.of(rels)
    coords = tuple(cb.project(word[x]) for x in range(G.order))
    gen_elements = []
    for k in range(cb.ngens):
        v = cb.lift(k)
        x = G.identity
        for i, e in enumerate(v):
            x = G.table[x][G.power(gens[i], e)]
        gen_elements.append(x)
    return AbelianStructure(cb.group, coords, tuple(gen_elements))


def abelian_invariants(G: FiniteGroup) -> FgAbelianGroup:
    """Invariant factors of an abelian group; raises NotAbelian otherwise."""
    return abelian_structure(G).group


def are_isomorphic_abelian(G: FiniteGroup, H: FiniteGroup) -> bool:
    return abelian_invariants(G) == abelian_invariants(H)


def abelianization(G: FiniteGroup) -> tuple[FgAbelianGroup, GroupHom]:
    """G/[G,G] in invariant-factor form together with the unit map."""
    Q, proj = quotient(G, derived_subgroup(G))
    return abelian_structure(Q).group, proj


# ---------------------------------------------------------------------------
# JSON group files


def group_from_json(obj) -> FiniteGroup:
    """Parse the group file format:
    {"type":"cayley","table":[[...]]} |
    {"type":"perm","degree":n,"generators":[[...]]} |
    {"type":"standard","name":"...","params":[...]}"""
    kind = obj.get("type")
    if kind == "cayley":
        return from_multiplication_table(obj["table"])
    if kind == "perm":
        G, _ = from_permutations(int(obj["degree"]), obj["generators"])
        return G
    if kind == "standard":
        params = obj.get("params", [])
        return standard_group(obj["name"], *params)
    raise Unsupported(f"unknown group file type {kind!r}")


def hom_from_json(obj) -> GroupHom:
    """Parse the homomorphism file format: {"dom":<group>,"cod":<group>,
    "images":[...]} where images is the full element map, or generator images
    when a "gens" list is present."""
    dom = group_from_json(obj["dom"])
    cod = group_from_json(obj["cod"])
    images = [int(x) for x in obj["images"]]
    if "gens" in obj:
        return hom_from_generator_images(dom, cod, [int(x) for x in obj["gens"]], images)
    if len(images) != dom.order:
        raise ValueError(
            "images must be the full element map unless 'gens' is given"
        )
    return GroupHom(dom, cod, tuple(images))


def load_group(path) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return group_from_json(json.load(fh))


def load_hom(path) -> GroupHom:
    with open(path, "r", encoding="utf-8") as fh:
        return hom_from_json(json.load(fh))
