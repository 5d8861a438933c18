import pytest

from wreathlab import (GMap, NotAbelian, NotNormal, abelianization_projection, canonical_gmap_to_product,
                       compose_homs, cyclic_group, cyclic_refinement, descending_to_ascending, dg_p, identity_hom,
                       induced_from_gmap, induction_step_epis, map_first_argument, map_second_argument,
                       regular_action, semidirect_quotient, trivial_group, verify_homomorphism)
from wreathlab import perm as P
from wreathlab.catalog import dihedral_group, parse_group, symmetric_group_3
from wreathlab.functorial import (check_hat_laws, commutator_kernel_matches, hat, product_collapse,
                                  rebase_to_regular)
from wreathlab.group import prime_factors, subgroup

C2, C3, C4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)


def test_canonical_gmap_fibers_and_constant_function():
    W, phi = canonical_gmap_to_product(C2, C2)
    assert phi.source.degree == 8 and phi.target.degree == 4
    assert all(len(f) == 2 for f in phi.fibers())
    # (f, c) with f trivial lands on (1, c)
    for c in W.top.group.elements:
        w = W.encode(W.top_element(c))
        x = W.carrier.index_of(w)
        point = phi(x)
        assert point // 2 == W.top.perm_of(c)[0] and point % 2 == 0


def test_identity_gmap_induces_identity():
    act = regular_action(C3)
    phi = GMap(act, act, tuple(range(3)))
    h = induced_from_gmap(C2, phi)
    assert h.verified and h.surjective and h.kernel_order == 1
    assert h.images == h.domain.generators


def test_empty_fiber_gives_identity():
    # a G-map from a single fixed point of the trivial group into two points
    E = trivial_group()
    src = regular_action(E)
    from wreathlab.wreath import GroupAction
    two = GroupAction(E, 2, "trivial", lambda g: bytes([0, 1]), lambda p: E.identity)
    phi = GMap(src, two, (0,))
    f = (C2.generators[0],)
    assert hat(phi, C2, f) == (C2.generators[0], C2.identity)
    h = induced_from_gmap(C2, phi)
    assert h.verified and not h.surjective


def test_induced_map_orders():
    _, phi = canonical_gmap_to_product(C2, C2)
    h = induced_from_gmap(C2, phi)
    assert (h.domain.order, h.codomain.order, h.kernel_order) == (2048, 128, 16) and h.surjective


def test_hat_laws_exhaustive_and_sampled():
    _, phi = canonical_gmap_to_product(C2, C2)
    r = check_hat_laws(phi, C2)
    assert r["exhaustive"] and r["multiplicative_failures"] == 0 and r["equivariance_failures"] == 0
    r = check_hat_laws(phi, C3, samples=200, seed=3)
    assert not r["exhaustive"] and r["multiplicative_cases"] == 200 and r["multiplicative_failures"] == 0


def test_hat_laws_require_abelian():
    _, phi = canonical_gmap_to_product(C2, C2)
    with pytest.raises(NotAbelian):
        check_hat_laws(phi, symmetric_group_3())


def test_first_argument():
    h = map_first_argument(identity_hom(C3), C2)
    assert h.kernel_order == 1
    q = verify_homomorphism(C4, C2, C2.generators)
    h = map_first_argument(q, C2)
    assert (h.domain.order, h.codomain.order, h.kernel_order) == (32, 8, 4) and h.surjective
    trivial = verify_homomorphism(C4, C2, [C2.identity])
    h = map_first_argument(trivial, C2)
    assert h.verified and not h.surjective and h.image_order == 2


def test_second_argument():
    h = map_second_argument(C2, identity_hom(C3))
    assert h.kernel_order == 1
    q = verify_homomorphism(C4, C2, C2.generators)
    h = map_second_argument(C2, q)
    assert (h.domain.order, h.codomain.order, h.kernel_order) == (64, 8, 8) and h.surjective
    # non-surjective psi: points outside the image carry the identity
    inc = verify_homomorphism(C2, C4, [P.power(C4.generators[0], 2)])
    h = map_second_argument(C2, inc)
    assert h.verified and not h.surjective and h.kernel_order == 1


def test_second_argument_requires_abelian():
    with pytest.raises(NotAbelian):
        map_second_argument(symmetric_group_3(), identity_hom(C2))


def test_induction_step():
    a, b = induction_step_epis(C2, C2, C2)
    assert (a.domain.order, a.codomain.order, b.codomain.order) == (2048, 128, 32)
    assert a.surjective and b.surjective
    c = compose_homs(a, b)
    assert c.kernel_order == 64
    for h in (a, b):
        for p in prime_factors(h.domain.order):
            assert dg_p(h.domain, p) == dg_p(h.codomain, p)
    a, b = induction_step_epis(C2, C2, trivial_group())
    assert (a.domain.order, a.codomain.order, b.codomain.order) == (8, 8, 4)


def test_induction_step_mixed_primes():
    a, b = induction_step_epis(C3, C2, C2)
    assert a.surjective and b.surjective
    assert b.codomain.order == 6 ** 2 * 2


def test_descending_to_ascending():
    for r in (1, 2):
        h = descending_to_ascending([C2] * r)
        assert h.kernel_order == 1
    h = descending_to_ascending([C2, C2, C2])
    assert (h.domain.order, h.codomain.order) == (2048, 128) and h.surjective


@pytest.mark.parametrize("pad", [0, 1, 2, 3])
def test_descending_to_ascending_with_trivial_padding(pad):
    factors = [C2, C2, C2]
    factors.insert(pad, trivial_group())
    h = descending_to_ascending(factors)
    assert (h.domain.order, h.codomain.order) == (2048, 128) and h.surjective
    assert len(h.domain.generators) == 4


def test_rebase_and_collapse():
    h = rebase_to_regular(symmetric_group_3(), C2)
    assert h.kernel_order == 1 and h.surjective
    h = product_collapse(C2, C3)
    assert h.surjective and h.codomain.order == 6 and h.kernel_order == 4


@pytest.mark.parametrize("H,G,kernel,factors", [("C2", "C2", 2, [2, 2]), ("C4", "C2", 4, [2, 4]),
                                                ("C3", "C2", 3, [6]), ("S3", "C2", 18, [2, 2])])
def test_abelianization_projection(H, G, kernel, factors):
    from wreathlab.abelian import abelian_invariants
    h = abelianization_projection(parse_group(H), parse_group(G))
    assert h.surjective and h.kernel_order == kernel
    assert commutator_kernel_matches(h)
    assert list(abelian_invariants(h.codomain).factors) == factors


def test_cyclic_refinement():
    spec, h = cyclic_refinement([[2]])
    assert spec.orders == (2,) and h.kernel_order == 1
    spec, h = cyclic_refinement([[2, 2]])
    assert spec.orders == (2, 2) and (h.domain.order, h.codomain.order) == (8, 4)
    spec, h = cyclic_refinement([[2, 2], [2]])
    assert (h.domain.order, h.codomain.order) == (2048, 32) and h.surjective
    spec, h = cyclic_refinement([[2], [2, 2]])
    assert h.surjective and spec.orders == (2, 2, 2)
    with pytest.raises(ValueError):
        cyclic_refinement([[]])


def test_semidirect_quotient():
    S3 = symmetric_group_3()
    A, H = subgroup(S3, [bytes([1, 2, 0])]), subgroup(S3, [bytes([1, 0, 2])])
    h = semidirect_quotient(S3, A, H)
    assert (h.domain.order, h.kernel_order) == (18, 3) and h.surjective
    D4 = dihedral_group(4)
    h = semidirect_quotient(D4, subgroup(D4, [D4.generators[0]]), subgroup(D4, [D4.generators[1]]))
    assert (h.domain.order, h.kernel_order) == (32, 4) and h.surjective
    C6 = cyclic_group(6)
    h = semidirect_quotient(C6, C6, subgroup(C6, []))
    assert h.kernel_order == 1


def test_semidirect_quotient_preconditions():
    S3 = symmetric_group_3()
    t = subgroup(S3, [bytes([1, 0, 2])])
    with pytest.raises(NotNormal):
        semidirect_quotient(S3, t, subgroup(S3, [bytes([1, 2, 0])]))
    with pytest.raises(ValueError):
        semidirect_quotient(S3, subgroup(S3, [bytes([1, 2, 0])]), subgroup(S3, []))
