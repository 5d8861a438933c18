"""Homomorphisms induced on wreath products by maps of their arguments.

Each construction computes the structured image of every domain generator,
encodes it, and hands the assignment to :func:`verify_homomorphism`.  These
maps exist by theorem, so a failed check raises :class:`ConstructionDefect`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from . import perm as P
from .abelian import AbelianInvariants, abelianization
from .errors import ConstructionDefect, NotAbelian, NotNormal
from .group import FiniteGroup, _Span, commutator_subgroup, cyclic_group, direct_product, is_normal, pair, same_group
from .homomorphism import Homomorphism, compose_homs, verify_homomorphism
from .wreath import (GroupAction, TowerSpec, WreathElement, WreathGroup, iterated_wreath, natural_action,
                     regular_action, regular_wreath)


def _require_abelian(A: FiniteGroup) -> None:
    if not A.is_abelian:
        raise NotAbelian(f"{A.label} must be abelian here")


def _product(elements, identity: bytes) -> bytes:
    return reduce(P.mul, elements, identity)


def _structured_map(src: WreathGroup, dst: WreathGroup, fn, construction: str) -> Homomorphism:
    images = [dst.encode(fn(src.decode(g))) for g in src.carrier.generators]
    hom = verify_homomorphism(src.carrier, dst.carrier, images, construction)
    return hom


# -- G-maps -------------------------------------------------------------------

@dataclass
class GMap:
    """An equivariant map between two actions of the same group."""

    source: GroupAction
    target: GroupAction
    mapping: tuple[int, ...]

    def __post_init__(self):
        if self.source.group is not self.target.group and not same_group(self.source.group, self.target.group):
            raise ValueError("a G-map needs both actions to be of the same group")
        if len(self.mapping) != self.source.degree:
            raise ValueError("mapping must cover every source point")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def is_equivariant(self) -> bool:
        """``phi(x.g) = phi(x).g`` for every point and every generator."""
        for g in self.source.group.generators:
            ps, pt = self.source.perm_of(g), self.target.perm_of(g)
            if any(self.mapping[ps[x]] != pt[self.mapping[x]] for x in range(self.source.degree)):
                return False
        return True

    @property
    def is_surjective(self) -> bool:
        return set(self.mapping) == set(range(self.target.degree))

    def fibers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.target.degree)]
        for x, y in enumerate(self.mapping):
            out[y].append(x)
        return out


def hat(phi: GMap, A: FiniteGroup, f: Sequence[bytes]) -> tuple[bytes, ...]:
    """``y -> prod of f(x) over the fiber of y``; an empty fiber gives the identity."""
    e = A.identity
    return tuple(_product((f[x] for x in fib), e) for fib in phi.fibers())


def canonical_gmap_to_product(B: FiniteGroup, C: FiniteGroup) -> tuple[WreathGroup, GMap]:
    """``B wr C -> B x C``, ``(f, c) -> (f(1), c)``.

    ``B wr C`` is built with both actions regular so that it acts on
    ``B x C`` itself.  Point 0 of that set is ``(1, 1)`` and
    ``(1, 1).(f, c) = (f(1), c)``, so the map is just "image of point 0".
    """
    W = WreathGroup(regular_action(B), regular_action(C), f"wr({B.label},{C.label})")
    X = regular_action(W.carrier)
    Y = natural_action(W.carrier)
    phi = GMap(X, Y, tuple(w[0] for w in W.carrier.elements))
    if not phi.is_equivariant() or not phi.is_surjective:
        raise ConstructionDefect(f"canonical map {W.label} -> {B.label}x{C.label} is not a surjective G-map")
    return W, phi


def induced_from_gmap(A: FiniteGroup, phi: GMap) -> Homomorphism:
    """``A wr_X G -> A wr_Y G``, ``(f, g) -> (hat(f), g)``; needs ``A`` abelian."""
    _require_abelian(A)
    if not phi.is_equivariant():
        raise ValueError("the map is not equivariant")
    base = natural_action(A)
    src = WreathGroup(base, phi.source)
    dst = WreathGroup(base, phi.target)
    hom = _structured_map(src, dst, lambda w: WreathElement(hat(phi, A, w.table), w.top),
                          "map induced by a G-map")
    return hom.require(surjective=phi.is_surjective)


def check_hat_laws(phi: GMap, A: FiniteGroup, *, exhaustive_limit: int = 4096, samples: int = 1000,
                   seed: int = 0) -> dict:
    """``hat(f1 f2) = hat(f1) hat(f2)`` and ``hat(f^g) = hat(f)^g``, with ``f^g(x) = f(x.g^-1)``.

    When ``|A|^|X| * |G| <= exhaustive_limit`` every ``f1`` is paired with
    every single-point function ``f2`` (these generate all functions, so
    multiplicativity on them gives it everywhere) and every ``(f, g)`` is
    checked for equivariance.  Otherwise ``samples`` seeded random cases of
    each law are drawn.
    """
    _require_abelian(A)
    G = phi.source.group
    nX, nY = phi.source.degree, phi.target.degree
    els, e = A.elements, A.identity
    exhaustive = len(els) ** nX * G.order <= exhaustive_limit
    if exhaustive:
        fs = [tuple(t) for t in itertools.product(els, repeat=nX)]
        singles = [tuple(a if i == x else e for i in range(nX)) for x in range(nX) for a in els if a != e]
        pairs = [(f1, f2) for f1 in fs for f2 in singles]
        twist = [(f, g) for f in fs for g in G.elements]
    else:
        rng = random.Random(seed)

        def rand_f():
            return tuple(rng.choice(els) for _ in range(nX))

        pairs = [(rand_f(), rand_f()) for _ in range(samples)]
        twist = [(rand_f(), rng.choice(G.elements)) for _ in range(samples)]
    mult_fail = 0
    for f1, f2 in pairs:
        lhs = hat(phi, A, tuple(P.mul(a, b) for a, b in zip(f1, f2)))
        rhs = tuple(P.mul(a, b) for a, b in zip(hat(phi, A, f1), hat(phi, A, f2)))
        mult_fail += lhs != rhs
    eq_fail = 0
    for f, g in twist:
        gs, gt = phi.source.perm_of(P.inv(g)), phi.target.perm_of(P.inv(g))
        hf = hat(phi, A, f)
        lhs = hat(phi, A, tuple(f[gs[x]] for x in range(nX)))
        rhs = tuple(hf[gt[y]] for y in range(nY))
        eq_fail += lhs != rhs
    return {"exhaustive": exhaustive, "seed": None if exhaustive else seed,
            "multiplicative_cases": len(pairs), "multiplicative_failures": mult_fail,
            "equivariance_cases": len(twist), "equivariance_failures": eq_fail}


# -- functoriality in each argument --------------------------------------------

def map_first_argument(h: Homomorphism, G: FiniteGroup) -> Homomorphism:
    """``A wr G -> B wr G``, ``(f, g) -> (h o f, g)``."""
    if not h.verified:
        raise ValueError("the map on the first argument must be a verified homomorphism")
    src = regular_wreath(h.domain, G)
    dst = regular_wreath(h.codomain, G)
    hom = _structured_map(src, dst, lambda w: WreathElement(tuple(h.apply(a) for a in w.table), w.top),
                          "first-argument functoriality")
    return hom.require(surjective=h.surjective)


def map_second_argument(A: FiniteGroup, psi: Homomorphism) -> Homomorphism:
    """``A wr G -> A wr H``, ``(f, g) -> (hat(f), psi(g))`` summing ``f`` over ``psi``-fibers."""
    _require_abelian(A)
    if not psi.verified:
        raise ValueError("the map on the second argument must be a verified homomorphism")
    src = regular_wreath(A, psi.domain)
    dst = regular_wreath(A, psi.codomain)
    G, H = psi.domain, psi.codomain
    target_index = [H.index_of(psi.apply(k)) for k in G.elements]
    e = A.identity

    def fn(w: WreathElement) -> WreathElement:
        table = [e] * H.order
        for k, y in enumerate(target_index):
            table[y] = P.mul(table[y], w.table[k])
        return WreathElement(tuple(table), psi.apply(w.top))

    hom = _structured_map(src, dst, fn, "second-argument functoriality")
    return hom.require(surjective=psi.surjective)


def _naturally_regular(B: FiniteGroup) -> bool:
    """True when ``B``'s own points already are its regular action."""
    if B.degree != B.order:
        return False
    reg = regular_action(B)
    return all(reg.perm_of(b) == b for b in B.generators)


def rebase_to_regular(B: FiniteGroup, C: FiniteGroup) -> Homomorphism:
    """``B wr C`` with ``B`` on its own points, onto ``B wr C`` with ``B`` acting regularly."""
    src = regular_wreath(B, C)
    dst = WreathGroup(regular_action(B), regular_action(C), src.label)
    return _structured_map(src, dst, lambda w: w, "change of base action").require()


def _with_natural_domain(core: Homomorphism, A: FiniteGroup, B: FiniteGroup, C: FiniteGroup) -> Homomorphism:
    if _naturally_regular(B):
        # same permutations, so only the group object needs swapping
        nat = regular_wreath(A, regular_wreath(B, C).carrier).carrier
        if same_group(nat, core.domain):
            return verify_homomorphism(nat, core.codomain, [core.apply(g) for g in nat.generators],
                                       core.construction).require()
    lift = map_second_argument(A, rebase_to_regular(B, C))
    return compose_homs(lift, core, core.construction).require()


def product_collapse(A: FiniteGroup, B: FiniteGroup) -> Homomorphism:
    """``A wr B -> A x B``, ``(f, b) -> (prod f, b)``; needs ``A`` abelian."""
    _require_abelian(A)
    src = regular_wreath(A, B)
    target = direct_product(A, B)
    e = A.identity
    images = []
    for g in src.carrier.generators:
        w = src.decode(g)
        images.append(pair(_product(w.table, e), w.top))
    return verify_homomorphism(src.carrier, target, images, "product collapse").require()


def induction_step_epis(A: FiniteGroup, B: FiniteGroup, C: FiniteGroup) -> tuple[Homomorphism, Homomorphism]:
    """``A wr (B wr C) -> (A wr B) wr C -> (A x B) wr C`` for abelian ``A``.

    The first map is the map induced by ``B wr C -> B x C``, read in
    ``(A wr B) wr C`` through the identification of ``A wr_{B x C} (B wr C)``
    with ``(A wr B) wr C``: with rows ordered ``y`` fastest, both act on
    ``A x B x C`` by the same permutations.  That identification is checked,
    not assumed.  The domain is built with ``B`` acting on its own points,
    matching :func:`iterated_wreath`.
    """
    _require_abelian(A)
    W, phi = canonical_gmap_to_product(B, C)
    induced = induced_from_gmap(A, phi)
    AB_C = regular_wreath(regular_wreath(A, B).carrier, C)
    if not same_group(induced.codomain, AB_C.carrier):
        raise ConstructionDefect("associativity identification failed: carriers differ")
    core = verify_homomorphism(induced.domain, AB_C.carrier, induced.images,
                               "associativity step").require()
    first = _with_natural_domain(core, A, B, C)
    second = map_first_argument(product_collapse(A, B), C)
    first.construction = "associativity step"
    second.construction = "collapse of the inner wreath product"
    return first, second


def _inner_to_ascending(A1: FiniteGroup, rest: Sequence[FiniteGroup]) -> Homomorphism:
    """``A1 wr asc(rest) -> asc(A1, rest)``."""
    if len(rest) == 1:
        D = iterated_wreath([A1, rest[0]], "asc").carrier
        return verify_homomorphism(D, D, D.generators, "identity")
    B = iterated_wreath(rest[:-1], "asc").carrier
    first, _ = induction_step_epis(A1, B, rest[-1])
    lifted = map_first_argument(_inner_to_ascending(A1, rest[:-1]), rest[-1])
    return compose_homs(first, lifted, "descending to ascending").require()


def descending_to_ascending(factors: Sequence[FiniteGroup]) -> Homomorphism:
    """Epimorphism from the descending tower onto the ascending one (abelian factors).

    For ``r >= 3`` the descending tail ``A2 wr (... wr Ar)`` is first pushed
    onto its ascending form through the second argument, which makes the
    shape ``A1 wr (B wr Ar)`` available for the associativity step.
    """
    factors = list(factors)
    for A in factors:
        _require_abelian(A)
    desc = iterated_wreath(factors, "desc").carrier
    core = [A for A in factors if not A.is_trivial]
    if len(core) < len(factors) and len(core) > 2:
        # trivial factors only pad the generator lists; the permutations are those of the core towers
        inner = descending_to_ascending(core)
        asc = iterated_wreath(factors, "asc").carrier
        if not (same_group(desc, inner.domain) and same_group(asc, inner.codomain)):
            raise ConstructionDefect("towers with trivial factors differ from the towers without them")
        out = verify_homomorphism(desc, asc, [inner.apply(g) for g in desc.generators], "descending to ascending")
        return out.require()
    if len(core) <= 2:
        asc = iterated_wreath(factors, "asc").carrier
        if same_group(desc, asc):
            return verify_homomorphism(desc, asc, desc.generators, "identity").require()
    if len(factors) <= 2:
        return verify_homomorphism(desc, desc, desc.generators, "identity").require()
    pieces = []
    if len(factors) > 3:
        pieces.append(map_second_argument(factors[0], descending_to_ascending(factors[1:])))
    pieces.append(_inner_to_ascending(factors[0], factors[1:]))
    hom = pieces[0]
    for nxt in pieces[1:]:
        hom = compose_homs(hom, nxt)
    # re-express on the descending tower's own generators
    out = verify_homomorphism(desc, iterated_wreath(factors, "asc").carrier,
                              [hom.apply(g) for g in desc.generators], "descending to ascending")
    return out.require()


# -- abelianization, refinement, semidirect quotients ----------------------------

def abelianization_projection(H: FiniteGroup, G: FiniteGroup) -> Homomorphism:
    """``H wr G -> H_ab x G_ab``, ``(f, g) -> (prod f [H,H], g [G,G])``."""
    W = regular_wreath(H, G)
    QH, _ = abelianization(H)
    QG, _ = abelianization(G)
    target = direct_product(QH.quotient, QG.quotient, f"{H.label}_ab*{G.label}_ab")
    e = H.identity
    images = []
    for g in W.carrier.generators:
        w = W.decode(g)
        images.append(pair(QH.image(_product(w.table, e)), QG.image(w.top)))
    return verify_homomorphism(W.carrier, target, images, "abelianization projection").require()


def abelian_from_invariants(factors: Sequence[int]) -> FiniteGroup:
    """``C_{d1} x (C_{d2} x ...)``."""
    factors = list(factors)
    if not factors:
        raise ValueError("empty invariant list")
    G = cyclic_group(factors[-1])
    for d in reversed(factors[:-1]):
        G = direct_product(cyclic_group(d), G)
    return G


def _refine(inv_lists: list[list[int]], groups: list[FiniteGroup]) -> Homomorphism:
    """Epimorphism from the cyclic tower of all factors onto ``desc(groups)``."""
    flat = [d for fs in inv_lists for d in fs]
    target = iterated_wreath(groups, "desc").carrier
    tower = iterated_wreath([cyclic_group(d) for d in flat], "desc").carrier
    if len(flat) == len(groups):
        return verify_homomorphism(tower, target, tower.generators, "identity").require()
    head = inv_lists[0]
    if len(head) == 1:
        rest = _refine(inv_lists[1:], groups[1:])
        return map_second_argument(groups[0], rest)
    # A1 = C_{d1} x A1': C wr (A1' wr G2) -> (C x A1') wr G2, then refine A1' wr G2
    c = groups[0]._cache["factors"][0]
    a1p = groups[0]._cache["factors"][1]
    tail = [a1p] + groups[1:]
    if len(tail) == 1:
        collapse = product_collapse(c, a1p)
    else:
        G2 = iterated_wreath(groups[1:], "desc").carrier
        first, second = induction_step_epis(c, a1p, G2)
        collapse = compose_homs(first, second)
    inner = _refine([head[1:]] + inv_lists[1:], tail)
    lifted = map_second_argument(c, inner)
    return compose_homs(lifted, collapse)


def cyclic_refinement(factor_lists: Sequence[Sequence[int] | AbelianInvariants]) -> tuple[TowerSpec, Homomorphism]:
    """Tower over all invariant factors, with an epimorphism onto ``A1 wr (A2 wr ...)``.

    ``A_i`` is built as ``C_{d1} x (C_{d2} x ...)`` from its invariant
    factors; trivial ``A_i`` are dropped.
    """
    inv_lists = [list(AbelianInvariants(tuple(fs)).factors) for fs in factor_lists]
    inv_lists = [fs for fs in inv_lists if fs]
    if not inv_lists:
        raise ValueError("all factors are trivial")
    groups = [abelian_from_invariants(fs) for fs in inv_lists]
    spec = TowerSpec(tuple(d for fs in inv_lists for d in fs), "desc")
    hom = _refine(inv_lists, groups)
    tower = iterated_wreath([cyclic_group(d) for d in spec.orders], "desc").carrier
    out = verify_homomorphism(tower, hom.codomain, [hom.apply(g) for g in tower.generators],
                              "cyclic refinement")
    return spec, out.require()


def semidirect_quotient(G: FiniteGroup, A: FiniteGroup, H: FiniteGroup) -> Homomorphism:
    """``A wr H -> G = AH``, ``(f, h) -> (prod_k k^-1 f(k) k) h``."""
    _require_abelian(A)
    if any(a not in G for a in A.generators) or any(h not in G for h in H.generators):
        raise ValueError("A and H must be subgroups of G")
    if not is_normal(G, A):
        raise NotNormal(f"{A.label} is not normal in {G.label}")
    inter = len(A.element_set & H.element_set)
    if A.order * H.order // inter != G.order:
        raise ValueError(f"A*H has order {A.order * H.order // inter}, not {G.order}")
    W = regular_wreath(A, H)
    Hel = H.elements
    Hinv = [P.inv(k) for k in Hel]
    images = []
    for g in W.carrier.generators:
        w = W.decode(g)
        acc = G.identity
        for i, k in enumerate(Hel):
            acc = P.mul(acc, P.mul(P.mul(Hinv[i], w.table[i]), k))
        images.append(P.mul(acc, w.top))
    return verify_homomorphism(W.carrier, G, images, "semidirect quotient").require()


def commutator_kernel_matches(hom: Homomorphism) -> bool:
    """Kernel of ``hom`` equals the commutator subgroup of its domain, as sets."""
    return hom.kernel() == commutator_subgroup(hom.domain).element_set
