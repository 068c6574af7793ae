"""Tests for the multiplication-table group layer."""

import json
import random
from itertools import product

import pytest

from hopfbench.errors import (
    DomainMismatch,
    NotAbelian,
    NotAGroup,
    NotAPermutation,
    NotNormal,
    OrderLimitExceeded,
    Unsupported,
)
from hopfbench.groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    abelian_invariants,
    abelian_structure,
    abelianization,
    are_isomorphic_abelian,
    center,
    commutator_subgroup_pair,
    compose,
    cyclic_group,
    derived_subgroup,
    dihedral_group,
    direct_product,
    from_multiplication_table,
    from_permutations,
    generated_subgroup,
    generating_set,
    group_from_json,
    hom_from_generator_images,
    hom_from_json,
    identity_hom,
    image,
    is_perfect,
    is_surjective,
    kernel,
    normal_closure,
    pullback,
    quotient,
    standard_group,
    subgroup_embedding,
    trivial_subgroup,
    whole_group,
)
from hopfbench.intlinalg import FgAbelianGroup


# ---------------------------------------------------------------------------
# oracles


def naive_closure(degree, gens):
    """Independent permutation closure: repeated pairwise products to a
    fixpoint (no BFS bookkeeping shared with the implementation)."""
    elems = {tuple(range(degree))}
    elems.update(tuple(g) for g in gens)
    while True:
        new = {
            tuple(p[q[i]] for i in range(degree))
            for p in elems
            for q in elems
        }
        if new <= elems:
            return elems
        elems |= new


def sign_hom_s3():
    S3, perms = from_permutations(3, [(1, 0, 2), (1, 2, 0)])
    C2 = cyclic_group(2)

    def parity(p):
        inv = sum(
            1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j]
        )
        return inv % 2

    return GroupHom(S3, C2, tuple(parity(p) for p in perms)), S3, perms


# ---------------------------------------------------------------------------
# constructors


def test_klein_four_table():
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    G = from_multiplication_table(table)
    assert G.order == 4
    assert G.identity == 0
    assert all(G.element_order(x) == 2 for x in range(1, 4))


def test_broken_associativity_rejected():
    # latin square (rows/cols are permutations) but not associative
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup) as err:
        from_multiplication_table(table)
    assert err.value.axiom in ("associativity", "identity")


def test_trivial_table():
    G = from_multiplication_table([[0]])
    assert G.order == 1


def test_bad_shapes_rejected():
    with pytest.raises(NotAGroup):
        from_multiplication_table([])
    with pytest.raises(NotAGroup):
        from_multiplication_table([[0, 1], [1, 1]])


def test_from_permutations_c3():
    G, labels = from_permutations(3, [(1, 2, 0)])
    assert G.order == 3
    assert labels[G.identity] == (0, 1, 2)


def test_from_permutations_s3():
    G, _ = from_permutations(3, [(1, 0, 2), (1, 2, 0)])
    assert G.order == 6
    assert len(naive_closure(3, [(1, 0, 2), (1, 2, 0)])) == 6


def test_from_permutations_a5():
    G, _ = from_permutations(5, [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)])
    assert G.order == 60
    assert len(naive_closure(5, [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)])) == 60


def test_from_permutations_rejects_non_permutation():
    with pytest.raises(NotAPermutation):
        from_permutations(3, [(0, 0, 1)])


def test_order_cap():
    with pytest.raises(OrderLimitExceeded):
        from_permutations(5, [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], cap=10)


def test_standard_groups():
    assert standard_group("cyclic", 4).order == 4
    assert standard_group("klein4").order_multiset() == (1, 2, 2, 2)
    assert standard_group("dihedral", 4).order == 8
    assert standard_group("symmetric", 4).order == 24
    assert standard_group("alternating", 4).order == 12
    K = standard_group("direct_product", ("cyclic", 2), ("cyclic", 2))
    assert K.order_multiset() == (1, 2, 2, 2)
    with pytest.raises(Unsupported):
        standard_group("free", 2)


def test_quaternion8_unique_involution():
    Q8 = standard_group("quaternion8")
    assert Q8.order == 8
    # brute-force element orders: exactly one element of order 2
    assert sum(1 for x in Q8.elements() if Q8.element_order(x) == 2) == 1
    assert Q8.order_multiset() == (1, 2, 4, 4, 4, 4, 4, 4)


def test_cyclic_one_generator():
    C4 = cyclic_group(4)
    assert generated_subgroup(C4, [1]).order == 4


# ---------------------------------------------------------------------------
# subgroups


def test_commutator_center_q8_trivial():
    Q8 = standard_group("quaternion8")
    Z = center(Q8)
    assert Z.order == 2
    assert commutator_subgroup_pair(Q8, Z, whole_group(Q8)).order == 1


def test_commutator_a3_in_s3():
    _, S3, perms = sign_hom_s3()
    a3 = tuple(
        i for i, p in enumerate(perms)
        if sum(1 for x in range(3) for y in range(x + 1, 3) if p[x] > p[y]) % 2 == 0
    )
    A3 = Subgroup(S3, tuple(sorted(a3)))
    got = commutator_subgroup_pair(S3, A3, whole_group(S3))
    # oracle: brute-force commutator enumeration
    comms = {
        S3.commutator(h, k) for h in A3.elements for k in S3.elements()
    }
    assert set(got.elements) >= comms
    assert got.elements == A3.elements


def test_derived_subgroup_s3_is_a3():
    _, S3, _ = sign_hom_s3()
    D = derived_subgroup(S3)
    assert D.order == 3


def test_normal_closure():
    _, S3, perms = sign_hom_s3()
    transposition = perms.index((1, 0, 2))
    three_cycle = perms.index((1, 2, 0))
    assert normal_closure(S3, [S3.identity]).order == 1
    assert normal_closure(S3, [transposition]).order == 6
    assert normal_closure(S3, [three_cycle]).order == 3


def test_quotient_q8_by_center_is_klein():
    Q8 = standard_group("quaternion8")
    Q, proj = quotient(Q8, center(Q8))
    assert Q.order == 4
    assert Q.order_multiset() == (1, 2, 2, 2)
    assert kernel(proj).elements == center(Q8).elements


def test_quotient_by_trivial_and_whole():
    G = standard_group("dihedral", 3)
    Q1, _ = quotient(G, trivial_subgroup(G))
    assert Q1.order == G.order
    Q2, _ = quotient(G, whole_group(G))
    assert Q2.order == 1


def test_quotient_requires_normal():
    _, S3, perms = sign_hom_s3()
    H = generated_subgroup(S3, [perms.index((1, 0, 2))])
    with pytest.raises(NotNormal):
        quotient(S3, H)


# ---------------------------------------------------------------------------
# homomorphisms


def test_kernel_of_sign_is_a3():
    f, S3, _ = sign_hom_s3()
    K = kernel(f)
    assert K.order == 3
    assert K.is_normal()


def test_kernel_of_identity_trivial():
    G = standard_group("cyclic", 6)
    assert kernel(identity_hom(G)).order == 1


def test_image_of_trivial_hom():
    G = standard_group("cyclic", 6)
    H = standard_group("cyclic", 5)
    f = GroupHom(G, H, (0,) * 6)
    assert image(f).elements == (0,)


def test_compose_and_domain_mismatch():
    f, S3, _ = sign_hom_s3()
    C2 = f.cod
    g = identity_hom(C2)
    assert compose(g, f).image_of == f.image_of
    with pytest.raises(DomainMismatch):
        compose(f, f)


def test_hom_validation_catches_non_multiplicative():
    C4 = cyclic_group(4)
    C2 = cyclic_group(2)
    with pytest.raises(ValueError):
        GroupHom(C4, C2, (0, 1, 1, 0))


def test_hom_from_generator_images():
    C4 = cyclic_group(4)
    C2 = cyclic_group(2)
    f = hom_from_generator_images(C4, C2, [1], [1])
    assert f.image_of == (0, 1, 0, 1)


# ---------------------------------------------------------------------------
# pullbacks


def test_pullback_along_identity_recovers_domain():
    f, S3, _ = sign_hom_s3()
    P, pr1, pr2 = pullback(f, identity_hom(f.cod))
    assert P.order == S3.order
    assert is_surjective(pr1)


def test_pullback_of_two_signs_has_order_18():
    f, S3, _ = sign_hom_s3()
    P, pr1, pr2 = pullback(f, f)
    assert P.order == 18
    # oracle: count pairs with equal sign directly
    count = sum(
        1
        for b in S3.elements()
        for c in S3.elements()
        if f.image_of[b] == f.image_of[c]
    )
    assert count == 18


def test_pullback_over_trivial_is_product():
    C2, C3 = cyclic_group(2), cyclic_group(3)
    T = cyclic_group(1)
    f = GroupHom(C2, T, (0, 0))
    g = GroupHom(C3, T, (0, 0, 0))
    P, _, _ = pullback(f, g)
    assert P.order == 6


def test_pullback_projections_jointly_injective():
    f, S3, _ = sign_hom_s3()
    P, pr1, pr2 = pullback(f, f)
    seen = set()
    for x in P.elements():
        pair = (pr1.image_of[x], pr2.image_of[x])
        assert pair not in seen
        seen.add(pair)


def test_pullback_of_surjection_is_surjection():
    # extensions are pullback-stable
    f, S3, _ = sign_hom_s3()
    C4 = cyclic_group(4)
    g = hom_from_generator_images(C4, f.cod, [1], [1])
    P, pr1, pr2 = pullback(f, g)
    assert is_surjective(pr2)  # pullback of the surjection f along g


def test_quotient_kernel_round_trip():
    rng = random.Random(5)
    G = standard_group("dihedral", 4)
    for _ in range(5):
        seed = [rng.randrange(G.order) for _ in range(2)]
        N = normal_closure(G, seed)
        Q, proj = quotient(G, N)
        assert kernel(proj).elements == N.elements


# ---------------------------------------------------------------------------
# abelian structure


def test_abelianization_s3():
    _, S3, _ = sign_hom_s3()
    inv, unit = abelianization(S3)
    assert inv == FgAbelianGroup((2,), 0)
    assert is_surjective(unit)
    assert kernel(unit).order == 3


def test_abelianization_c6():
    C6 = cyclic_group(6)
    inv, _ = abelianization(C6)
    assert inv == FgAbelianGroup((6,), 0)


def test_abelianization_a5_trivial():
    A5 = standard_group("alternating", 5)
    inv, _ = abelianization(A5)
    assert inv.is_trivial()
    assert is_perfect(A5)


def test_is_perfect_s3_false():
    _, S3, _ = sign_hom_s3()
    assert not is_perfect(S3)


def test_abelian_invariants_and_iso():
    A = direct_product(cyclic_group(2), cyclic_group(4))
    B = direct_product(cyclic_group(4), cyclic_group(2))
    assert abelian_invariants(A) == FgAbelianGroup((2, 4), 0)
    assert are_isomorphic_abelian(A, B)
    C = cyclic_group(8)
    assert not are_isomorphic_abelian(A, C)
    with pytest.raises(NotAbelian):
        abelian_invariants(standard_group("dihedral", 3))


def test_abelian_structure_coordinates_are_isomorphism():
    for G in (
        direct_product(cyclic_group(2), cyclic_group(6)),
        cyclic_group(12),
        direct_product(cyclic_group(3), cyclic_group(3)),
    ):
        st = abelian_structure(G)
        # coordinates are a bijection and additive
        assert len(set(st.coords)) == G.order
        d = st.group.torsion
        for a in G.elements():
            for b in G.elements():
                ab = G.table[a][b]
                want = tuple(
                    (x + y) % d[i] for i, (x, y) in enumerate(zip(st.coords[a], st.coords[b]))
                )
                assert st.coords[ab] == want


def test_subgroup_embedding():
    Q8 = standard_group("quaternion8")
    Z = center(Q8)
    S, incl = subgroup_embedding(Z)
    assert S.order == 2
    assert image(incl).elements == Z.elements


def test_generating_set_generates():
    for G in (
        standard_group("dihedral", 6),
        standard_group("symmetric", 4),
        standard_group("quaternion8"),
        cyclic_group(1),
    ):
        gens = generating_set(G)
        assert generated_subgroup(G, gens).order == G.order


# ---------------------------------------------------------------------------
# multiplicativity invariant (full double loop)


def test_hom_multiplicativity_assertable():
    f, S3, _ = sign_hom_s3()
    for a in S3.elements():
        for b in S3.elements():
            assert f.image_of[S3.table[a][b]] == f.cod.table[f.image_of[a]][f.image_of[b]]


# ---------------------------------------------------------------------------
# JSON formats


def test_group_json_round_trips():
    spec_objs = [
        {"type": "cayley", "table": [[0, 1], [1, 0]]},
        {"type": "perm", "degree": 3, "generators": [[1, 2, 0]]},
        {"type": "standard", "name": "klein4", "params": []},
        {
            "type": "standard",
            "name": "direct_product",
            "params": [["cyclic", 2], ["cyclic", 3]],
        },
    ]
    orders = [2, 3, 4, 6]
    for obj, n in zip(spec_objs, orders):
        G = group_from_json(json.loads(json.dumps(obj)))
        assert G.order == n


def test_hom_json_full_map_and_generator_images():
    dom = {"type": "standard", "name": "cyclic", "params": [4]}
    cod = {"type": "standard", "name": "cyclic", "params": [2]}
    f1 = hom_from_json({"dom": dom, "cod": cod, "images": [0, 1, 0, 1]})
    f2 = hom_from_json({"dom": dom, "cod": cod, "gens": [1], "images": [1]})
    assert f1.image_of == f2.image_of
