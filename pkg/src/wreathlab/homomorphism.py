"""Homomorphisms given by generator images, certified by the graph criterion.

An assignment ``g_i -> h_i`` extends to a homomorphism exactly when the
subgroup of ``domain x codomain`` generated by the pairs ``(g_i, h_i)`` has
the same order as ``domain``: that subgroup always projects onto the domain,
and it is the graph of a function iff the projection is injective.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, Sequence

from . import perm as P
from .config import checkpoint, limits
from .errors import CapExceeded, ConstructionDefect
from .group import FiniteGroup, _Span, conjugacy_classes, order_census, same_group, small_generating_set

SCHEMA = "wreathlab-cert/1"

# graphs up to this many elements keep their element table for apply()
_TABLE_LIMIT = 1 << 17


def _graph_closure(gens: list[bytes], degree: int, limit: int, keep: bool) -> tuple[int, dict | None]:
    """Breadth-first closure of the graph generators.

    Stops as soon as more than ``limit`` elements are found.  Returns the
    number found (``limit + 1`` on early exit) and, if ``keep``, the set.
    """
    e = P.ident(degree)
    tabs = [P.table(g) for g in dict.fromkeys(gens) if g != e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for t in tabs:
                y = x.translate(t)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
            if len(seen) > limit:
                return limit + 1, None
        frontier = nxt
        checkpoint()
    return len(seen), (seen if keep else None)


class Homomorphism:
    """A map ``domain -> codomain`` fixed by the images of ``domain.generators``.

    Build these with :func:`verify_homomorphism`; ``verified`` records the
    outcome of the graph check and ``surjective`` whether the images generate
    the codomain.
    """

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, images: Sequence[bytes],
                 construction: str = ""):
        images = [bytes(h) for h in images]
        if len(images) != len(domain.generators):
            raise ValueError(f"need {len(domain.generators)} generator images, got {len(images)}")
        if any(len(h) != codomain.degree for h in images):
            raise ValueError("generator images must have the codomain's degree")
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(images)
        self.construction = construction
        self.notes: list[str] = []
        self.verified = False
        self.in_codomain = False
        self.image_order = 0
        self.surjective = False
        self._table: dict[bytes, bytes] | None = None

    # -- certification ---------------------------------------------------
    def _verify(self) -> "Homomorphism":
        dom, cod = self.domain, self.codomain
        self.in_codomain = all(h in cod for h in self.images)
        span = _Span(cod.degree)
        for h in self.images:
            span.add(h)
        self.image_order = len(span.elements)
        self.surjective = self.in_codomain and self.image_order == cod.order
        n = dom.degree + cod.degree
        if n > 255:
            raise CapExceeded(f"graph degree {n} is too large")
        gens = [dom.generators[i] + bytes(v + dom.degree for v in h) for i, h in enumerate(self.images)]
        keep = dom.order <= _TABLE_LIMIT
        count, graph = _graph_closure(gens, n, dom.order, keep)
        self.verified = self.in_codomain and count == dom.order
        if self.verified and graph is not None:
            d = dom.degree
            self._table = {x[:d]: bytes(v - d for v in x[d:]) for x in graph}
        return self

    @property
    def kernel_order(self) -> int:
        if not self.verified:
            raise ValueError("kernel of an unverified map is undefined")
        return self.domain.order // self.image_order

    @property
    def is_injective(self) -> bool:
        return self.verified and self.image_order == self.domain.order

    def require(self, surjective: bool = True) -> "Homomorphism":
        """Raise :class:`ConstructionDefect` unless verified (and onto)."""
        if not self.verified or (surjective and not self.surjective):
            pairs = list(zip(self.domain.generators, self.images))
            bad = next(((g, h) for g, h in pairs if h not in self.codomain), pairs[0])
            what = "is not a homomorphism" if not self.verified else "is not surjective"
            raise ConstructionDefect(
                f"{self.construction or 'map'} {self.domain.label} -> {self.codomain.label} {what}; "
                f"first generator pair {list(bad[0])} -> {list(bad[1])}")
        return self

    # -- evaluation --------------------------------------------------------
    def _element_table(self) -> dict[bytes, bytes]:
        if self._table is None:
            if not self.verified:
                raise ValueError("cannot evaluate an unverified map")
            dom, cod = self.domain, self.codomain
            n = dom.degree + cod.degree
            gens = [dom.generators[i] + bytes(v + dom.degree for v in h) for i, h in enumerate(self.images)]
            _, graph = _graph_closure(gens, n, dom.order, True)
            d = dom.degree
            self._table = {x[:d]: bytes(v - d for v in x[d:]) for x in graph}
        return self._table

    def apply(self, x: bytes) -> bytes:
        try:
            return self._element_table()[bytes(x)]
        except KeyError:
            raise ValueError(f"{list(x)} is not in the domain {self.domain.label}") from None

    def __call__(self, x: bytes) -> bytes:
        return self.apply(x)

    def kernel(self) -> frozenset[bytes]:
        e = self.codomain.identity
        return frozenset(x for x, y in self._element_table().items() if y == e)

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "kind": "homomorphism",
            "construction": self.construction,
            "domain": {"label": self.domain.label, "order": self.domain.order, "degree": self.domain.degree},
            "codomain": {"label": self.codomain.label, "order": self.codomain.order,
                         "degree": self.codomain.degree},
            "generator_images": [{"generator": list(g), "image": list(h)}
                                 for g, h in zip(self.domain.generators, self.images)],
            "verified": self.verified,
            "surjective": self.surjective,
            "image_order": self.image_order,
            "kernel_order": self.kernel_order if self.verified else None,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def __repr__(self) -> str:
        flag = "epi" if self.surjective and self.verified else ("hom" if self.verified else "unverified")
        return f"Homomorphism({self.domain.label} -> {self.codomain.label}, {flag})"


def verify_homomorphism(domain: FiniteGroup, codomain: FiniteGroup, images: Sequence[bytes],
                        construction: str = "") -> Homomorphism:
    """Certify the generator assignment with the graph criterion."""
    return Homomorphism(domain, codomain, images, construction)._verify()


def identity_hom(G: FiniteGroup) -> Homomorphism:
    return verify_homomorphism(G, G, G.generators, "identity")


def compose_homs(first: Homomorphism, second: Homomorphism, construction: str = "") -> Homomorphism:
    """The map ``x -> second(first(x))``, re-verified from scratch."""
    if not same_group(first.codomain, second.domain):
        raise ValueError(f"cannot compose: {first.codomain.label} is not {second.domain.label}")
    images = [second.apply(h) for h in first.images]
    out = verify_homomorphism(first.domain, second.codomain, images,
                              construction or f"({first.construction}) then ({second.construction})")
    out.notes.append("applied left to right: first map, then second")
    return out


def naive_is_homomorphism(domain: FiniteGroup, codomain: FiniteGroup, images: Sequence[bytes]) -> bool:
    """Oracle: extend the assignment along words and check every product.

    Each element gets the image of the first word that reaches it (breadth
    first); the map is a homomorphism iff that table respects all products.
    """
    table: dict[bytes, bytes] = {domain.identity: codomain.identity}
    order = [domain.identity]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for g, h in zip(domain.generators, images):
            y = P.mul(x, g)
            if y not in table:
                table[y] = P.mul(table[x], h)
                order.append(y)
    if any(h not in codomain for h in images):
        return False
    for x in domain.elements:
        for y in domain.elements:
            if table[P.mul(x, y)] != P.mul(table[x], table[y]):
                return False
    return True


def _fingerprint(G: FiniteGroup) -> tuple:
    return G.order, tuple(sorted(order_census(G).items())), G.is_abelian


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> Homomorphism | None:
    """An isomorphism ``G -> H`` if one exists, by exhaustive generator-image search."""
    cap = limits().brute_cap
    if G.order > cap or H.order > cap:
        raise CapExceeded(f"isomorphism search is limited to order {cap}")
    if _fingerprint(G) != _fingerprint(H):
        return None
    if G.order == 1:
        return verify_homomorphism(G, H, [H.identity] * len(G.generators), "isomorphism")
    gens = small_generating_set(G)
    Gs = FiniteGroup(gens, G.label, _elements=G.elements)
    orders = [P.order(g) for g in gens]
    by_order: dict[int, list[bytes]] = {}
    for h in H.elements:
        by_order.setdefault(P.order(h), []).append(h)
    reps = {cls[0] for cls in conjugacy_classes(H)}
    # orders of pairwise products are preserved by any isomorphism
    pair_orders = {(i, j): P.order(P.mul(gens[i], gens[j])) for i in range(len(gens)) for j in range(i)}

    def search(chosen: list[bytes]) -> Homomorphism | None:
        k = len(chosen)
        if k == len(gens):
            hom = verify_homomorphism(Gs, H, chosen, "isomorphism")
            return hom if hom.verified and hom.surjective else None
        pool = by_order.get(orders[k], [])
        if k == 0:
            pool = [h for h in pool if h in reps]
        for h in pool:
            if all(P.order(P.mul(h, chosen[j])) == pair_orders[(k, j)] for j in range(k)):
                found = search(chosen + [h])
                if found is not None:
                    return found
            checkpoint()
        return None

    found = search([])
    if found is None:
        return None
    # re-express on G's own generators
    return verify_homomorphism(G, H, [found.apply(g) for g in G.generators], "isomorphism")


def image_subgroup(hom: Homomorphism) -> FiniteGroup:
    span = _Span(hom.codomain.degree)
    for h in hom.images:
        span.add(h)
    return FiniteGroup(span.gens or [hom.codomain.identity], f"im({hom.construction})",
                       _elements=span.elements)
