"""Finite permutation groups given by generators, enumerated on demand.

Everything here works on concrete element sets; there is no stabilizer-chain
machinery.  Subgroups are grown with Dimino's coset algorithm so that
generated subgroups, normal closures and the derived series never need the
full element list of the ambient group, only its generators.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import perm as P
from .config import checkpoint, limits
from .errors import CapExceeded, NotNilpotent, NotNormal, NotSolvable


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_factors(n: int) -> list[int]:
    """Distinct primes dividing ``n``, increasing."""
    return _prime_factors(n)


def _valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _is_prime_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _enumerate(gens: Sequence[bytes], degree: int, cap: int) -> list[bytes]:
    e = P.ident(degree)
    tabs = [P.table(g) for g in dict.fromkeys(gens) if g != e]
    seen = {e}
    out = [e]
    i = 0
    while i < len(out):
        x = out[i]
        i += 1
        for t in tabs:
            y = x.translate(t)
            if y not in seen:
                seen.add(y)
                out.append(y)
        if not i & 1023:
            checkpoint()
            if len(out) > cap:
                raise CapExceeded(f"group order exceeds element cap {cap}")
    if len(out) > cap:
        raise CapExceeded(f"group order {len(out)} exceeds element cap {cap}")
    return out


def closure(degree: int, gens: Iterable[bytes]) -> frozenset[bytes]:
    """The subgroup generated by ``gens`` as a set (breadth-first closure)."""
    gens = [bytes(g) for g in gens]
    if not gens:
        raise ValueError("closure needs at least one generator")
    if any(len(g) != degree for g in gens):
        raise ValueError("generators must all have the given degree")
    return frozenset(_enumerate(gens, degree, limits().element_cap))


class _Span:
    """Incrementally grown subgroup (Dimino's algorithm)."""

    def __init__(self, degree: int):
        e = P.ident(degree)
        self.elements: list[bytes] = [e]
        self.set: set[bytes] = {e}
        self.gens: list[bytes] = []

    def add(self, g: bytes) -> bool:
        if g in self.set:
            return False
        cap = limits().element_cap
        self.gens.append(g)
        old = list(self.elements)
        tabs = [P.table(s) for s in self.gens]
        reps = [old[0]]
        i = 0
        while i < len(reps):
            r = reps[i]
            i += 1
            for t in tabs:
                y = r.translate(t)
                if y not in self.set:
                    ty = P.table(y)
                    coset = [h.translate(ty) for h in old]
                    self.elements.extend(coset)
                    self.set.update(coset)
                    reps.append(y)
                    if len(self.elements) > cap:
                        raise CapExceeded(f"subgroup order exceeds element cap {cap}")
                    checkpoint()
        return True


class FiniteGroup:
    """A permutation group: degree, generators, and a lazily built element list.

    ``order`` may be supplied when it is known by formula (wreath products);
    the element list is then only built if somebody asks for it.
    """

    def __init__(self, generators: Iterable[bytes], label: str = "", *, order: int | None = None,
                 _elements: Sequence[bytes] | None = None):
        gens = tuple(bytes(g) for g in generators)
        if not gens:
            raise ValueError("a group needs at least one generator (use the identity)")
        degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators have different degrees")
        if degree > limits().degree_cap:
            raise CapExceeded(f"degree {degree} exceeds degree cap {limits().degree_cap}")
        if order is not None and order > limits().element_cap:
            raise CapExceeded(f"group order {order} exceeds element cap {limits().element_cap}")
        self.degree = degree
        self.generators = gens
        self.label = label or f"<{len(gens)} gens on {degree} points>"
        self._order = order
        self._elements = tuple(_elements) if _elements is not None else None
        self._set: frozenset[bytes] | None = None
        self._lock = threading.Lock()
        self._cache: dict = {}
        # set by wreath.build_tower on tower carriers
        self.tower = None

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label!r}, degree={self.degree})"

    @property
    def elements(self) -> tuple[bytes, ...]:
        """All elements, identity first, in breadth-first order from the generators."""
        if self._elements is None:
            with self._lock:
                if self._elements is None:
                    els = _enumerate(self.generators, self.degree, limits().element_cap)
                    if self._order is not None and self._order != len(els):
                        raise AssertionError(f"{self.label}: order formula {self._order} "
                                             f"disagrees with enumeration {len(els)}")
                    self._elements = tuple(els)
        return self._elements

    @property
    def element_set(self) -> frozenset[bytes]:
        if self._set is None:
            self._set = frozenset(self.elements)
        return self._set

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = len(self.elements)
        return self._order

    @property
    def identity(self) -> bytes:
        return P.ident(self.degree)

    def __contains__(self, x: bytes) -> bool:
        return bytes(x) in self.element_set

    @property
    def is_trivial(self) -> bool:
        e = self.identity
        return all(g == e for g in self.generators)

    @property
    def is_abelian(self) -> bool:
        gs = self.generators
        return all(P.mul(a, b) == P.mul(b, a) for a, b in itertools.combinations(gs, 2))

    def index_of(self, x: bytes) -> int:
        idx = self._cache.get("index")
        if idx is None:
            idx = {g: i for i, g in enumerate(self.elements)}
            self._cache["index"] = idx
        return idx[x]

    def relabel(self, label: str) -> "FiniteGroup":
        self.label = label
        return self


def subgroup(G: FiniteGroup, gens: Iterable[bytes], label: str = "") -> FiniteGroup:
    """The subgroup of ``G`` generated by ``gens`` (Dimino)."""
    span = _Span(G.degree)
    for g in gens:
        span.add(bytes(g))
    return _from_span(span, label)


def _from_span(span: _Span, label: str = "") -> FiniteGroup:
    gens = span.gens or [span.elements[0]]
    return FiniteGroup(gens, label, _elements=span.elements)


def trivial_group(degree: int = 1) -> FiniteGroup:
    return FiniteGroup([P.ident(degree)], "E")


def cyclic_group(n: int) -> FiniteGroup:
    """``C_n`` acting regularly on ``n`` points by ``i -> i+1``."""
    if n < 1:
        raise ValueError("cyclic order must be positive")
    if n == 1:
        return trivial_group()
    return FiniteGroup([bytes((i + 1) % n for i in range(n))], f"C{n}", order=n)


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str = "") -> FiniteGroup:
    """``G x H`` on the disjoint union of the point sets (``G`` first)."""
    n = G.degree + H.degree
    gens = [embed_left(g, n) for g in G.generators] + [embed_right(h, G.degree, n) for h in H.generators]
    order = G.order * H.order if (G._order is not None and H._order is not None) else None
    D = FiniteGroup(gens, label or f"{G.label}*{H.label}", order=order)
    D._cache["factors"] = (G, H)
    return D


def embed_left(g: bytes, degree: int) -> bytes:
    return bytes(g) + P.ident(degree)[len(g):]


def embed_right(h: bytes, offset: int, degree: int) -> bytes:
    return P.shift(h, offset, degree)


def split_pair(x: bytes, left_degree: int) -> tuple[bytes, bytes]:
    """Inverse of the direct-product embedding."""
    return bytes(x[:left_degree]), bytes(v - left_degree for v in x[left_degree:])


def pair(g: bytes, h: bytes) -> bytes:
    """The element ``(g, h)`` of a direct product."""
    n = len(g)
    return bytes(g) + bytes(v + n for v in h)


def is_subgroup_of(H: FiniteGroup, G: FiniteGroup) -> bool:
    return H.degree == G.degree and all(g in G for g in H.generators)


def same_group(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Equal as permutation groups (same degree, same element set)."""
    if G is H:
        return True
    if G.degree != H.degree:
        return False
    if G.generators == H.generators:
        return True
    return G.order == H.order and is_subgroup_of(H, G)


def is_normal(G: FiniteGroup, N: FiniteGroup) -> bool:
    Nset = N.element_set
    for g in G.generators:
        gi = P.inv(g)
        for n in N.generators:
            if P.mul(P.mul(gi, n), g) not in Nset:
                return False
    return True


def normal_closure(G: FiniteGroup, S: Iterable[bytes], label: str = "") -> FiniteGroup:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    span = _Span(G.degree)
    conj = [(P.inv(g), g) for g in G.generators]
    queue = [bytes(s) for s in S]
    while queue:
        x = queue.pop()
        if span.add(x):
            for gi, g in conj:
                queue.append(P.mul(P.mul(gi, x), g))
    return _from_span(span, label)


def commutator_subgroup(G: FiniteGroup) -> FiniteGroup:
    """``[G, G]``: normal closure of commutators of generator pairs."""
    cached = G._cache.get("commutator")
    if cached is None:
        comms = [P.comm(a, b) for a, b in itertools.combinations(G.generators, 2)]
        cached = normal_closure(G, comms, f"[{G.label},{G.label}]")
        G._cache["commutator"] = cached
    return cached


def commutator_subgroup_brute(G: FiniteGroup) -> frozenset[bytes]:
    """Oracle: subgroup generated by commutators of all element pairs."""
    comms = {P.comm(x, y) for x in G.elements for y in G.elements}
    return closure(G.degree, comms)


def derived_series(G: FiniteGroup) -> list[FiniteGroup]:
    """``[G, G', G'', ..., 1]``; raises :class:`NotSolvable` if it stalls."""
    series = [G]
    while not series[-1].is_trivial:
        cur = series[-1]
        nxt = commutator_subgroup(cur)
        if nxt.order == cur.order:
            raise NotSolvable(f"{G.label} is not solvable: derived series stabilizes at order {cur.order}")
        series.append(nxt)
    return series


def derived_length(G: FiniteGroup) -> int:
    return len(derived_series(G)) - 1


def conjugacy_classes(G: FiniteGroup) -> list[tuple[bytes, ...]]:
    """Classes in order of first appearance in ``G.elements``."""
    cached = G._cache.get("classes")
    if cached is not None:
        return cached
    conj = [(P.inv(g), g) for g in G.generators]
    seen: set[bytes] = set()
    classes = []
    for x in G.elements:
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        i = 0
        while i < len(orbit):
            y = orbit[i]
            i += 1
            for gi, g in conj:
                z = P.mul(P.mul(gi, y), g)
                if z not in seen:
                    seen.add(z)
                    orbit.append(z)
        classes.append(tuple(orbit))
    G._cache["classes"] = classes
    return classes


def order_census(G: FiniteGroup) -> Counter:
    cached = G._cache.get("census")
    if cached is None:
        cached = Counter(P.order(x) for x in G.elements)
        G._cache["census"] = cached
    return cached


def exponent(G: FiniteGroup) -> int:
    out = 1
    for k in order_census(G):
        out = P._lcm(out, k)
    return out


def small_generating_set(G: FiniteGroup) -> list[bytes]:
    """Greedy generating set, preferring elements of large order."""
    if G.is_trivial:
        return [G.identity]
    span = _Span(G.degree)
    for x in sorted(G.elements, key=lambda x: -P.order(x)):
        if len(span.elements) == G.order:
            break
        span.add(x)
    # drop generators made redundant by later ones
    gens = list(span.gens)
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if rest and len(_enumerate(rest, G.degree, G.order)) == G.order:
            gens = rest
    return gens


def is_nilpotent(G: FiniteGroup) -> bool:
    """A finite group is nilpotent iff each set of ``p``-elements has Sylow size."""
    n = G.order
    census = order_census(G)
    for p in _prime_factors(n):
        count = sum(c for k, c in census.items() if _is_prime_power_of(k, p))
        if count != p ** _valuation(n, p):
            return False
    return True


def sylow_subgroup(G: FiniteGroup, p: int) -> FiniteGroup:
    """The unique Sylow ``p``-subgroup of a nilpotent group."""
    if not is_nilpotent(G):
        raise NotNilpotent(f"{G.label} is not nilpotent")
    els = [x for x in G.elements if _is_prime_power_of(P.order(x), p)]
    span = _Span(G.degree)
    for x in sorted(els, key=lambda x: -P.order(x)):
        if len(span.elements) == len(els):
            break
        span.add(x)
    return _from_span(span, f"Syl{p}({G.label})")


@dataclass
class CosetQuotient:
    """``G/N`` acting faithfully on the cosets of ``N``.

    ``representatives[i]`` represents coset ``i``; coset 0 is ``N`` itself.
    The quotient's generators are the images of ``parent.generators`` in order.
    """

    parent: FiniteGroup
    normal_subgroup: FiniteGroup
    representatives: tuple[bytes, ...]
    quotient: FiniteGroup
    _label: dict = field(repr=False)

    def coset_index(self, x: bytes) -> int:
        return self._label[bytes(x)]

    def image(self, x: bytes) -> bytes:
        """Canonical map: the permutation of cosets induced by ``x``."""
        t = P.table(bytes(x))
        return bytes(self._label[r.translate(t)] for r in self.representatives)

    @property
    def cosets(self) -> list[frozenset[bytes]]:
        buckets: list[list[bytes]] = [[] for _ in self.representatives]
        for x, i in self._label.items():
            buckets[i].append(x)
        return [frozenset(b) for b in buckets]


def _coset_labels(G: FiniteGroup, N: FiniteGroup) -> tuple[list[bytes], dict[bytes, int]]:
    Nel = N.elements
    label: dict[bytes, int] = {}
    reps: list[bytes] = []

    def new_coset(y: bytes) -> None:
        idx = len(reps)
        reps.append(y)
        t = P.table(y)
        for n in Nel:
            label[n.translate(t)] = idx

    new_coset(G.identity)
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for g in G.generators:
            y = P.mul(r, g)
            if y not in label:
                new_coset(y)
        checkpoint()
    return reps, label


def quotient_group(G: FiniteGroup, N: FiniteGroup, label: str = "") -> CosetQuotient:
    if not is_subgroup_of(N, G) or not is_normal(G, N):
        raise NotNormal(f"{N.label} is not a normal subgroup of {G.label}")
    reps, lab = _coset_labels(G, N)
    if len(reps) > 255:
        raise CapExceeded(f"quotient of index {len(reps)} is too large to act on its cosets")
    if len(reps) * N.order != G.order:
        raise AssertionError("coset enumeration did not cover the group")
    gens = []
    for g in G.generators:
        t = P.table(g)
        gens.append(bytes(lab[r.translate(t)] for r in reps))
    Q = FiniteGroup(gens, label or f"{G.label}/{N.label}", order=len(reps))
    return CosetQuotient(G, N, tuple(reps), Q, lab)


def coset_order_census(G: FiniteGroup, N: FiniteGroup) -> Counter:
    """Census of element orders in ``G/N`` without building the quotient."""
    reps, lab = _coset_labels(G, N)
    Nset = N.element_set
    census: Counter = Counter()
    for r in reps:
        x, k = r, 1
        while x not in Nset:
            x = P.mul(x, r)
            k += 1
        census[k] += 1
    return census
