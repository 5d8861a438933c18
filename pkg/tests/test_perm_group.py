import itertools

import pytest

from wreathlab import (CapExceeded, FiniteGroup, NotNormal, NotSolvable, Perm, closure, commutator_subgroup,
                       compose, cyclic_group, derived_length, direct_product, identity, invert, is_nilpotent,
                       normal_closure, quotient_group, sylow_subgroup, trivial_group, use_limits)
from wreathlab import perm as P
from wreathlab.catalog import alternating_group_4, dihedral_group, parse_group, quaternion_group, symmetric_group_3
from wreathlab.group import (commutator_subgroup_brute, conjugacy_classes, exponent, is_normal, order_census,
                             same_group, subgroup)

import oracles

S3_ALL = frozenset(bytes(p) for p in itertools.permutations(range(3)))


def test_compose_identity_and_involution():
    q = Perm([2, 0, 3, 1])
    assert compose(identity(4), q) == q
    t = Perm.from_cycles(2, (0, 1))
    assert compose(t, t) == identity(2)


def test_compose_matches_two_line_evaluation():
    p = Perm.from_cycles(3, (0, 1, 2))
    q = Perm.from_cycles(3, (0, 1))
    assert tuple(compose(p, q)) == oracles.apply_then(tuple(p), tuple(q))


def test_compose_rejects_degree_mismatch():
    with pytest.raises(ValueError):
        compose(identity(2), identity(3))


@pytest.mark.parametrize("bad", [[], [0, 0], [1, 2]])
def test_perm_validation(bad):
    with pytest.raises(ValueError):
        Perm(bad)


def test_perm_helpers():
    p = Perm.from_cycles(5, (0, 1, 2), (3, 4))
    assert p.order() == 6
    assert p ** 6 == identity(5)
    assert compose(p, p.inverse()) == identity(5)
    assert invert(p) == p.inverse()
    assert sorted(p.cycles()) == [(0, 1, 2), (3, 4)]
    assert "Perm(" in repr(p)


def test_closure_examples():
    assert closure(3, [identity(3)]) == {identity(3)}
    c4 = closure(4, [Perm.from_cycles(4, (0, 1, 2, 3))])
    assert len(c4) == 4
    s3 = closure(3, [Perm.from_cycles(3, (0, 1)), Perm.from_cycles(3, (0, 1, 2))])
    assert s3 == S3_ALL


def test_closure_agrees_with_oracle_on_s4_subgroups():
    gens_sets = [[(1, 0, 2, 3)], [(1, 2, 3, 0)], [(1, 0, 2, 3), (0, 1, 3, 2)], [(1, 2, 0, 3), (1, 0, 3, 2)],
                 [(1, 0, 2, 3), (1, 2, 3, 0)]]
    for gens in gens_sets:
        ours = closure(4, [bytes(g) for g in gens])
        assert {tuple(x) for x in ours} == oracles.generate(gens, 4)


def test_group_elements_start_with_identity():
    G = symmetric_group_3()
    assert G.elements[0] == G.identity
    assert G.order == 6 and set(G.elements) == S3_ALL


def test_group_declared_order_respected_and_caps():
    with pytest.raises(ValueError):
        FiniteGroup([])
    with use_limits(degree_cap=4):
        with pytest.raises(CapExceeded):
            cyclic_group(5)
    with use_limits(element_cap=4):
        with pytest.raises(CapExceeded):
            symmetric_group_3().elements


def test_normal_closure_examples():
    G = symmetric_group_3()
    assert normal_closure(G, [G.identity]).order == 1
    three = Perm.from_cycles(3, (0, 1, 2))
    N = normal_closure(G, [three])
    assert N.order == 3
    subgroups = oracles.all_subgroups(G.elements, 3)
    smallest = min((H for H in subgroups if tuple(three) in H and all(
        oracles.apply_then(oracles.apply_then(oracles.inverse(g), h), g) in H for g in H for h in H)), key=len)
    assert {tuple(x) for x in N.elements} == smallest
    assert normal_closure(G, [Perm.from_cycles(3, (0, 1))]).order == 6


def test_normal_closure_matches_oracle_on_d4():
    G = dihedral_group(4)
    for x in G.elements:
        ours = {tuple(y) for y in normal_closure(G, [x]).elements}
        assert ours == oracles.normal_closure_brute(G.elements, [x], G.degree)


@pytest.mark.parametrize("expr,order", [("C6", 1), ("S3", 3), ("wr(C2,C2)", 2), ("A4", 4), ("Q8", 2), ("D4", 2)])
def test_commutator_subgroup(expr, order):
    G = parse_group(expr)
    H = commutator_subgroup(G)
    assert H.order == order
    assert {tuple(x) for x in H.elements} == oracles.commutator_brute(G.elements, G.degree)
    assert frozenset(H.elements) == commutator_subgroup_brute(G)


@pytest.mark.parametrize("expr,dl", [("E", 0), ("C5", 1), ("S3", 2), ("wr(C2,C2)", 2), ("wr(C2,C2,C2)", 3),
                                     ("A4", 2), ("Q8", 2)])
def test_derived_length(expr, dl):
    assert derived_length(parse_group(expr)) == dl


def test_derived_length_rejects_nonsolvable():
    a5 = FiniteGroup([bytes([1, 2, 3, 4, 0]), bytes([1, 2, 0, 3, 4])], "A5")
    assert a5.order == 60
    with pytest.raises(NotSolvable):
        derived_length(a5)


def test_quotient_group():
    G = symmetric_group_3()
    assert quotient_group(G, subgroup(G, [G.identity])).quotient.order == 6
    C4 = cyclic_group(4)
    assert quotient_group(C4, subgroup(C4, [P.power(C4.generators[0], 2)])).quotient.order == 2
    q = quotient_group(G, commutator_subgroup(G))
    assert q.quotient.order == 2 and len(q.cosets) == 2
    assert all(len(c) == 3 for c in q.cosets)
    # the coset map is a homomorphism
    for x in G.elements:
        for y in G.elements:
            assert q.image(P.mul(x, y)) == P.mul(q.image(x), q.image(y))


def test_quotient_requires_normal():
    G = symmetric_group_3()
    with pytest.raises(NotNormal):
        quotient_group(G, subgroup(G, [Perm.from_cycles(3, (0, 1))]))


def test_sylow_and_nilpotence():
    assert sylow_subgroup(cyclic_group(6), 2).order == 2
    S = sylow_subgroup(cyclic_group(12), 2)
    assert S.order == 4 and S.is_abelian and exponent(S) == 4
    G = parse_group("Q8*C3")
    S = sylow_subgroup(G, 2)
    assert S.order == 8 and order_census(S) == order_census(quaternion_group())
    assert not is_nilpotent(symmetric_group_3())
    assert is_nilpotent(quaternion_group()) and is_nilpotent(dihedral_group(4))
    assert not is_nilpotent(alternating_group_4())


def test_direct_product_and_same_group():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert G.order == 6 and G.is_abelian
    assert same_group(symmetric_group_3(), parse_group("D3"))


def test_conjugacy_classes_partition():
    for expr in ("S3", "D4", "Q8", "A4"):
        G = parse_group(expr)
        classes = conjugacy_classes(G)
        assert sum(map(len, classes)) == G.order
        assert classes[0] == (G.identity,)
        for cls in classes:
            x = cls[0]
            assert {P.conj(x, g) for g in G.elements} == set(cls)


def test_trivial_group():
    E = trivial_group()
    assert E.order == 1 and E.is_trivial and E.is_abelian


def test_concurrent_enumeration_is_consistent():
    from concurrent.futures import ThreadPoolExecutor
    G = parse_group("wr(C2,C2,C2;asc)")
    with ThreadPoolExecutor(8) as pool:
        results = list(pool.map(lambda _: G.elements, range(16)))
    assert all(r is results[0] for r in results) and len(results[0]) == 128
