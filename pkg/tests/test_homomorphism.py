import random

import pytest

from wreathlab import (ConstructionDefect, compose_homs, cyclic_group, identity_hom, is_isomorphic,
                       verify_homomorphism)
from wreathlab import perm as P
from wreathlab.catalog import dihedral_group, parse_group, quaternion_group, symmetric_group_3
from wreathlab.homomorphism import image_subgroup, naive_is_homomorphism


def test_identity():
    G = symmetric_group_3()
    h = identity_hom(G)
    assert h.verified and h.surjective and h.kernel_order == 1 and h.is_injective


def test_quotient_c4_to_c2():
    h = verify_homomorphism(cyclic_group(4), cyclic_group(2), cyclic_group(2).generators)
    assert h.verified and h.surjective and h.kernel_order == 2
    assert len(h.kernel()) == 2


def test_non_homomorphism_rejected():
    C2, C4 = cyclic_group(2), cyclic_group(4)
    h = verify_homomorphism(C2, C4, C4.generators)
    assert not h.verified
    with pytest.raises(ConstructionDefect):
        h.require()
    assert not naive_is_homomorphism(C2, C4, C4.generators)


def test_apply_and_compose():
    C4, C2 = cyclic_group(4), cyclic_group(2)
    h = verify_homomorphism(C4, C2, C2.generators)
    g = C4.generators[0]
    assert h(P.power(g, 3)) == C2.generators[0]
    c = compose_homs(identity_hom(C4), h)
    assert c.verified and c.images == h.images
    c = compose_homs(h, identity_hom(C2))
    assert c.verified and c.kernel_order == 2


def _all_images(G, H):
    for imgs in ((a, b) for a in H.elements for b in H.elements):
        yield list(imgs[:len(G.generators)])


@pytest.mark.parametrize("dom,cod", [("S3", "C2"), ("D4", "C2*C2"), ("C4", "C2"), ("S3", "S3"),
                                     ("Q8", "C2*C2"), ("C6", "S3")])
def test_graph_criterion_agrees_with_naive_check(dom, cod):
    G, H = parse_group(dom), parse_group(cod)
    rng = random.Random(0)
    count = 0
    for imgs in _all_images(G, H):
        if len(G.generators) == 1 and rng.random() < 0.5:
            continue
        graph = verify_homomorphism(G, H, imgs).verified
        assert graph == naive_is_homomorphism(G, H, imgs)
        count += graph
    assert count >= 1


def test_isomorphism_search():
    assert is_isomorphic(parse_group("wr(C2,C2)"), dihedral_group(4)) is not None
    assert is_isomorphic(parse_group("S3"), parse_group("D3")) is not None
    assert is_isomorphic(quaternion_group(), dihedral_group(4)) is None
    assert is_isomorphic(cyclic_group(6), parse_group("C2*C3")) is not None
    assert is_isomorphic(cyclic_group(4), parse_group("C2*C2")) is None


def test_image_and_json():
    h = verify_homomorphism(cyclic_group(2), cyclic_group(4), [bytes([2, 3, 0, 1])])
    assert h.verified and not h.surjective
    assert image_subgroup(h).order == 2
    d = h.to_json()
    assert d["verified"] is True and d["surjective"] is False
