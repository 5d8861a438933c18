"""Acceptance criteria, one test each.  The summary hook in conftest prints PASS/FAIL per criterion."""

import itertools

import pytest

from wreathlab import (TowerSpec, build_tower, canonical_gmap_to_product, check_wl_eq_dg_characterization,
                       compose_homs, cyclic_conductor, cyclic_group, derived_length, descending_to_ascending,
                       dg, dg_brute, dg_p, identity_hom, induced_from_gmap, is_semiabelian, map_first_argument,
                       map_second_argument, nilpotent_tower, regular_wreath, verify_homomorphism, wl_bounds)
from wreathlab.abelian import abelian_invariants, abelianization_invariants
from wreathlab.catalog import catalog, dihedral_group, parse_group, quaternion_group, symmetric_group_3
from wreathlab.cli import main
from wreathlab.functorial import abelianization_projection, check_hat_laws, induction_step_epis
from wreathlab.group import commutator_subgroup, prime_factors
from wreathlab.invariants import validate_semiabelian_chain

from oracles import commutator_brute

C2, C3, C4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)


def _epi(h, dom, cod, kernel=None):
    assert h.verified and h.surjective
    assert (h.domain.order, h.codomain.order) == (dom, cod)
    if kernel is not None:
        assert h.kernel_order == kernel


def test_criterion_1_functoriality():
    """Functoriality constructions are verified epimorphisms and the hat laws hold."""
    W, phi = canonical_gmap_to_product(C2, C2)
    assert phi.is_equivariant() and phi.is_surjective
    assert sorted(len(f) for f in phi.fibers()) == [2, 2, 2, 2]

    _epi(induced_from_gmap(C2, phi), 2048, 128, kernel=16)

    q = verify_homomorphism(C4, C2, C2.generators)
    _epi(map_first_argument(q, C2), 32, 8, kernel=4)
    _epi(map_second_argument(C2, q), 64, 8, kernel=8)
    ident = map_first_argument(identity_hom(C3), C2)
    _epi(ident, 18, 18, kernel=1)
    ident = map_second_argument(C2, identity_hom(C3))
    _epi(ident, 24, 24, kernel=1)

    exhaustive = check_hat_laws(phi, C2)
    assert exhaustive["exhaustive"]
    assert exhaustive["multiplicative_failures"] == 0 and exhaustive["equivariance_failures"] == 0
    sampled = check_hat_laws(phi, C3, samples=1000, seed=7)
    assert not sampled["exhaustive"] and sampled["multiplicative_cases"] >= 1000
    assert sampled["multiplicative_failures"] == 0 and sampled["equivariance_failures"] == 0


def test_criterion_2_chain():
    """Associativity/collapse chain 2048 -> 128 -> 32 keeps dg_2 = 3; desc -> asc for [2,2,2]."""
    first, second = induction_step_epis(C2, C2, C2)
    _epi(first, 2048, 128)
    _epi(second, 128, 32)
    assert [dg_p(first.domain, 2), dg_p(first.codomain, 2), dg_p(second.codomain, 2)] == [3, 3, 3]
    _epi(compose_homs(first, second), 2048, 32, kernel=64)
    h = descending_to_ascending([C2, C2, C2])
    _epi(h, 2048, 128)
    assert dg_p(h.domain, 2) == dg_p(h.codomain, 2) == 3


@pytest.mark.parametrize("pair", [("C2", "C2"), ("C4", "C2"), ("C3", "C2"), ("S3", "C2")])
def test_criterion_3_abelianization(pair):
    """Abelianization projection kernel equals the commutator subgroup; image invariants merge."""
    H, G = parse_group(pair[0]), parse_group(pair[1])
    h = abelianization_projection(H, G)
    assert h.verified and h.surjective
    W = h.domain
    assert h.kernel() == frozenset(commutator_subgroup(W).elements)
    assert {bytes(x) for x in commutator_brute(W.elements, W.degree)} == h.kernel()
    img = abelian_invariants(h.codomain)
    assert img == abelianization_invariants(H) + abelianization_invariants(G)
    if pair == ("S3", "C2"):
        assert list(img.factors) == [2, 2] and h.kernel_order == 18


def test_criterion_4_dg_consistency():
    """dg equals brute-force dg on the catalog up to order 512; dg_p adds over wreath products."""
    groups = catalog(512)
    assert len(groups) >= 25
    for label, G in groups:
        assert (0 if G.is_trivial else dg(G)) == dg_brute(G), label
    pairs = [("C2", "C2"), ("C3", "C2"), ("C2", "C3"), ("C4", "C2"), ("S3", "C2"), ("C2", "S3"), ("C6", "C2")]
    for h, g in pairs:
        H, G = parse_group(h), parse_group(g)
        W = regular_wreath(H, G).carrier
        for p in prime_factors(W.order):
            assert dg_p(W, p) == dg_p(H, p) + dg_p(G, p), (h, g, p)


def _criterion_5_specs():
    out = []
    for r in range(1, 5):
        for orders in itertools.product((2, 3, 4), repeat=r):
            for b in ("desc", "asc") if r > 1 else ("desc",):
                spec = TowerSpec(orders, b)
                if spec.projected_order(1 << 20) <= 1 << 20 and spec.projected_degree() <= 64:
                    out.append(spec)
    return out


def test_criterion_5_derived_length():
    """dl = r for every cyclic tower over {2,3,4} of order at most 2^20, both bracketings."""
    specs = _criterion_5_specs()
    names = {(s.orders, s.bracketing) for s in specs}
    for must in [((2, 2), "desc"), ((3, 2), "desc"), ((2, 3), "desc"), ((4, 2), "desc"), ((2, 2, 2), "desc"),
                 ((2, 2), "asc"), ((2, 2, 2), "asc")]:
        assert must in names
    for spec in specs:
        G = build_tower(spec).carrier
        assert G.order == spec.projected_order()
        assert derived_length(G) == spec.length, spec.expr()


def test_criterion_6_wreath_length():
    """Exact wreath lengths of S3, D4, Q8 and C2..C12."""
    s3 = wl_bounds(symmetric_group_3())
    assert (s3.exact, s3.dg_value) == (2, 1)
    assert s3.refuted_up_to >= 1 and not s3.budget_exhausted
    assert s3.witness.verified and s3.witness.spec.orders == (3, 2)

    D4 = dihedral_group(4)
    d4 = wl_bounds(D4)
    assert d4.exact == d4.dg_value == 2
    ch = check_wl_eq_dg_characterization(D4)
    assert ch.has_witness and ch.prime == 2 and ch.epimorphism.verified
    assert all(n % 2 == 0 for n in ch.epimorphism.spec.orders) and ch.tower_dg == 2

    Q8 = quaternion_group()
    spec, epi = nilpotent_tower(Q8)
    assert epi.verified and spec.length == 2 == dg(Q8)
    assert wl_bounds(Q8).exact == 2

    for n in range(2, 13):
        assert wl_bounds(cyclic_group(n)).exact == 1, n


def test_criterion_7_characterization():
    """wl = dg exactly when a length-dg witness tower exists, across the catalog up to order 64."""
    exhausted = []
    checked = 0
    for label, G in catalog(64):
        if G.is_trivial:
            continue
        cert = wl_bounds(G)
        if cert.budget_exhausted:
            exhausted.append(label)
            continue
        assert cert.exact is not None, label
        ch = check_wl_eq_dg_characterization(G)
        assert (cert.exact == cert.dg_value) == ch.has_witness, label
        if ch.has_witness:
            assert ch.epimorphism.verified and ch.tower_dg == cert.dg_value
        checked += 1
    assert exhausted == []
    assert checked >= 50


def test_criterion_8_semiabelian():
    """Semiabelian certificates with re-validated chains."""
    names = [label for label, G in catalog(512) if G.is_abelian]
    names += ["S3", "D4", "D5", "D6", "Q8", "A4", "wr(C2,C2)", "wr(C3,C2)"]
    for name in names:
        cert = is_semiabelian(parse_group(name))
        assert cert.verdict, name
        assert validate_semiabelian_chain(cert) == [], name


def test_criterion_9_conductor():
    """Smallest primes 1 mod N."""
    for N, p in [(3, 7), (4, 5), (5, 11), (8, 17), (12, 13)]:
        assert cyclic_conductor(N)["p"] == p


def test_criterion_10_determinism(capsys):
    """Two survey runs produce byte-identical JSON."""
    outs = []
    for _ in range(2):
        assert main(["survey", "--max-order", "24", "--format", "json"]) == 0
        outs.append(capsys.readouterr().out.encode())
    assert outs[0] == outs[1] and len(outs[0]) > 1000
