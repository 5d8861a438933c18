"""Permutational and standard wreath products, and iterated towers.

An element of ``H wr_X G`` is a pair ``(f, g)`` with ``f: X -> H`` (the
*table*) and ``g`` in ``G`` (the *top*).  Products follow

    (f1, g1)(f2, g2) = (f1 * f2', g1 g2),   f2'(x) = f2(x.g1),

and the group acts on ``Y x X`` by ``(y, x).(f, g) = (y.f(x), x.g)``.  Point
``(y, x)`` has index ``y + |Y| * x`` so ``y`` varies fastest.  That action is
the faithful permutation image (the *carrier*) every algorithm runs on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

from . import perm as P
from .config import limits
from .errors import CapExceeded
from .group import FiniteGroup, cyclic_group, trivial_group


class GroupAction:
    """A right action of ``group`` on points ``0..degree-1``.

    ``perm_of(g)`` gives the permutation of the points induced by ``g``;
    ``element_of`` inverts it (the actions used here are faithful).
    """

    def __init__(self, group: FiniteGroup, degree: int, kind: str,
                 perm_of: Callable[[bytes], bytes], element_of: Callable[[bytes], bytes]):
        self.group = group
        self.degree = degree
        self.kind = kind
        self._perm_of = perm_of
        self._element_of = element_of
        self._memo: dict[bytes, bytes] = {}

    def perm_of(self, g: bytes) -> bytes:
        p = self._memo.get(g)
        if p is None:
            p = self._perm_of(g)
            if len(self._memo) < 4096:
                self._memo[g] = p
        return p

    def element_of(self, p: bytes) -> bytes:
        return self._element_of(p)

    def act(self, point: int, g: bytes) -> int:
        return self.perm_of(g)[point]

    def check_right_action(self) -> bool:
        """``x.1 = x`` and ``x.(gh) = (x.g).h`` for all generator pairs."""
        G = self.group
        if self.perm_of(G.identity) != P.ident(self.degree):
            return False
        for g in G.generators:
            for h in G.generators:
                if self.perm_of(P.mul(g, h)) != P.mul(self.perm_of(g), self.perm_of(h)):
                    return False
        return True

    def orbit_representatives(self) -> list[int]:
        seen = [False] * self.degree
        reps = []
        gens = [self.perm_of(g) for g in self.group.generators]
        for start in range(self.degree):
            if seen[start]:
                continue
            reps.append(start)
            seen[start] = True
            stack = [start]
            while stack:
                x = stack.pop()
                for q in gens:
                    y = q[x]
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
        return reps


def natural_action(G: FiniteGroup) -> GroupAction:
    """``G`` acting on its own points."""
    act = G._cache.get("natural_action")
    if act is None:
        act = GroupAction(G, G.degree, "natural", bytes, bytes)
        G._cache["natural_action"] = act
    return act


def regular_action(G: FiniteGroup) -> GroupAction:
    """Right regular action; point ``i`` is ``G.elements[i]`` and point 0 the identity."""
    act = G._cache.get("regular_action")
    if act is None:
        els = G.elements
        if len(els) > 255:
            raise CapExceeded(f"regular action of a group of order {len(els)} is too large")

        def perm_of(g: bytes) -> bytes:
            t = P.table(g)
            return bytes(G.index_of(e.translate(t)) for e in els)

        def element_of(p: bytes) -> bytes:
            return els[p[0]]

        act = GroupAction(G, len(els), "regular", perm_of, element_of)
        G._cache["regular_action"] = act
    return act


@dataclass(frozen=True)
class WreathElement:
    """``(f, g)``: ``table[x]`` is ``f(x)`` as an element of the base group."""

    table: tuple[bytes, ...]
    top: bytes


class WreathGroup:
    """``H wr_X G`` for a base action (``H`` on ``Y``) and a top action (``G`` on ``X``)."""

    def __init__(self, base: GroupAction, top: GroupAction, label: str = ""):
        H, G = base.group, top.group
        nY, nX = base.degree, top.degree
        lim = limits()
        if nY * nX > lim.degree_cap:
            raise CapExceeded(f"wreath product degree {nY * nX} exceeds degree cap {lim.degree_cap}")
        order = H.order ** nX * G.order
        if order > lim.element_cap:
            raise CapExceeded(f"wreath product order {order} exceeds element cap {lim.element_cap}")
        self.base = base
        self.top = top
        self.label = label or f"{H.label} wr {G.label}"
        gens = []
        for x0 in top.orbit_representatives():
            for a in H.generators:
                if a != H.identity:
                    gens.append(self.encode(self.delta(x0, a)))
        for g in G.generators:
            gens.append(self.encode(WreathElement(self._unit_table(), g)))
        if not gens:
            gens = [P.ident(nY * nX)]
        self.carrier = FiniteGroup(gens, self.label, order=order)
        self.spec: TowerSpec | None = None

    @property
    def order(self) -> int:
        return self.carrier.order

    @property
    def degree(self) -> int:
        return self.base.degree * self.top.degree

    def _unit_table(self) -> tuple[bytes, ...]:
        return (self.base.group.identity,) * self.top.degree

    def identity_element(self) -> WreathElement:
        return WreathElement(self._unit_table(), self.top.group.identity)

    def delta(self, x: int, a: bytes) -> WreathElement:
        """``(f, 1)`` with ``f(x) = a`` and ``f`` trivial elsewhere."""
        table = list(self._unit_table())
        table[x] = a
        return WreathElement(tuple(table), self.top.group.identity)

    def top_element(self, g: bytes) -> WreathElement:
        return WreathElement(self._unit_table(), g)

    def encode(self, w: WreathElement) -> bytes:
        nY = self.base.degree
        gx = self.top.perm_of(w.top)
        out = bytearray(nY * self.top.degree)
        for x, fx in enumerate(w.table):
            fy = self.base.perm_of(fx)
            off, toff = nY * x, nY * gx[x]
            for y in range(nY):
                out[off + y] = fy[y] + toff
        return bytes(out)

    def decode(self, p: bytes) -> WreathElement:
        nY, nX = self.base.degree, self.top.degree
        xs = bytearray(nX)
        table = []
        for x in range(nX):
            off = nY * x
            xg = p[off] // nY
            xs[x] = xg
            toff = nY * xg
            table.append(self.base.element_of(bytes(p[off + y] - toff for y in range(nY))))
        return WreathElement(tuple(table), self.top.element_of(bytes(xs)))

    def multiply(self, w1: WreathElement, w2: WreathElement) -> WreathElement:
        return wreath_multiply(w1, w2, self)

    def random_element(self, rng: random.Random) -> WreathElement:
        H, G = self.base.group.elements, self.top.group.elements
        return WreathElement(tuple(rng.choice(H) for _ in range(self.top.degree)), rng.choice(G))

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "degree": self.degree,
            "order": self.order,
            "bracketing": self.spec.bracketing if self.spec else None,
            "factors": list(self.spec.orders) if self.spec else None,
            "generators": [list(g) for g in self.carrier.generators],
        }


def wreath_multiply(w1: WreathElement, w2: WreathElement, ctx: WreathGroup) -> WreathElement:
    shift = ctx.top.perm_of(w1.top)
    table = tuple(P.mul(w1.table[x], w2.table[shift[x]]) for x in range(ctx.top.degree))
    return WreathElement(table, P.mul(w1.top, w2.top))


def permutational_wreath(base: GroupAction, top: GroupAction, label: str = "") -> WreathGroup:
    return WreathGroup(base, top, label)


def regular_wreath(H: FiniteGroup, G: FiniteGroup, label: str = "", *, base_regular: bool = False) -> WreathGroup:
    """Standard wreath product ``H wr G`` (``G`` acting regularly on ``X = G``).

    ``H`` acts on ``Y`` through its own points unless ``base_regular``; the
    abstract group is the same either way, only the carrier degree differs.
    """
    base = regular_action(H) if base_regular else natural_action(H)
    return WreathGroup(base, regular_action(G), label or f"wr({H.label},{G.label})")


Bracketing = Literal["desc", "asc"]


@dataclass(frozen=True)
class TowerSpec:
    """Cyclic orders ``|C1|, ..., |Cr|`` and a bracketing.

    ``desc`` is ``C1 wr (C2 wr (... wr Cr))``; ``asc`` is ``((C1 wr C2) wr ...) wr Cr``.
    """

    orders: tuple[int, ...]
    bracketing: Bracketing = "desc"

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        if not self.orders or any(n < 1 for n in self.orders):
            raise ValueError(f"tower orders must be positive and nonempty: {self.orders}")
        if self.bracketing not in ("desc", "asc"):
            raise ValueError(f"unknown bracketing {self.bracketing!r}")

    @property
    def length(self) -> int:
        return len(self.orders)

    def projected_order(self, ceiling: int | None = None) -> int:
        """Order of the tower by formula.

        With ``ceiling``, any value above it is reported as ``ceiling + 1``
        (deep towers have orders far too large to write down).
        """
        top = ceiling + 1 if ceiling is not None else None

        def clip(v: int) -> int:
            return v if top is None or v <= top else top

        def power(n: int, k: int) -> int:
            if top is not None and n > 1 and k > top.bit_length():
                return top
            return clip(n ** k)

        ns = self.orders
        if self.bracketing == "desc":
            w = ns[-1]
            for n in reversed(ns[:-1]):
                w = clip(power(n, w) * w)
            return clip(w)
        a = ns[0]
        for n in ns[1:]:
            a = clip(power(a, n) * n)
        return clip(a)

    def projected_degree(self) -> int:
        ns = [n for n in self.orders]
        if self.bracketing == "asc" or len(ns) == 1:
            d = 1
            for n in ns:
                d *= n
            return d
        inner = TowerSpec(self.orders[1:], "desc")
        if ns[0] == 1:
            return inner.projected_degree()
        return ns[0] * inner.projected_order(255)

    def expr(self) -> str:
        if len(self.orders) == 1:
            return f"C{self.orders[0]}" if self.orders[0] > 1 else "E"
        return "wr(" + ",".join(f"C{n}" if n > 1 else "E" for n in self.orders) + f";{self.bracketing})"


def build_tower(spec: TowerSpec, allow_trivial: bool = False) -> WreathGroup:
    """The iterated standard wreath product described by ``spec``.

    The carrier's generators are the tower generators, one per factor and in
    factor order (the identity stands in for a trivial factor, which is
    skipped during construction).
    """
    if not allow_trivial and any(n == 1 for n in spec.orders):
        raise ValueError(f"trivial factors are not allowed here: {spec.orders}")
    lim = limits()
    if spec.projected_order(lim.element_cap) > lim.element_cap:
        raise CapExceeded(f"{spec.expr()} has order above the element cap {lim.element_cap}")
    degree = spec.projected_degree()
    if degree > lim.degree_cap:
        raise CapExceeded(f"{spec.expr()} needs degree {degree}, above degree cap {lim.degree_cap}")
    wg = iterated_wreath([cyclic_group(n) for n in spec.orders], spec.bracketing)
    wg.spec = spec
    wg.label = spec.expr()
    wg.carrier.relabel(spec.expr())
    wg.carrier.tower = spec
    return wg


def iterated_wreath(groups: Sequence[FiniteGroup], bracketing: Bracketing = "desc") -> WreathGroup:
    """``G1 wr (G2 wr ...)`` or ``((G1 wr G2) wr ...)``, natural base actions throughout.

    Every map in :mod:`wreathlab.functorial` builds its towers here, so two
    towers over the same factor objects have identical carriers.  The carrier
    generators are one block per factor, in factor order; a trivial factor
    contributes a single identity generator.
    """
    if not groups:
        raise ValueError("need at least one factor")
    if bracketing == "desc":
        return _build_desc(list(groups))
    if bracketing == "asc":
        return _build_asc(list(groups))
    raise ValueError(f"unknown bracketing {bracketing!r}")


def _with_generators(wg: WreathGroup, gens: list[bytes]) -> WreathGroup:
    old = wg.carrier
    wg.carrier = FiniteGroup(gens, old.label, order=old.order)
    return wg


def _base_gens(wg: WreathGroup, H: FiniteGroup) -> list[bytes]:
    if H.is_trivial:
        return [wg.carrier.identity]
    return [wg.encode(wg.delta(0, a)) for a in H.generators if a != H.identity]


def _single(G: FiniteGroup) -> WreathGroup:
    # G wr 1 is numerically G itself
    wg = WreathGroup(natural_action(G), regular_action(trivial_group()), G.label)
    return _with_generators(wg, _base_gens(wg, G))


def _build_desc(groups: list[FiniteGroup]) -> WreathGroup:
    if len(groups) == 1:
        return _single(groups[0])
    inner = _build_desc(groups[1:])
    H = groups[0]
    if H.is_trivial:
        return _with_generators(inner, [inner.carrier.identity] + list(inner.carrier.generators))
    wg = regular_wreath(H, inner.carrier, f"wr({','.join(g.label for g in groups)};desc)")
    gens = _base_gens(wg, H) + [wg.encode(wg.top_element(w)) for w in inner.carrier.generators]
    return _with_generators(wg, gens)


def _build_asc(groups: list[FiniteGroup]) -> WreathGroup:
    if len(groups) == 1:
        return _single(groups[0])
    inner = _build_asc(groups[:-1])
    C = groups[-1]
    wg = regular_wreath(inner.carrier, C, f"wr({','.join(g.label for g in groups)};asc)")
    gens = [wg.encode(wg.delta(0, a)) for a in inner.carrier.generators]
    if C.is_trivial:
        gens.append(wg.carrier.identity)
    else:
        gens += [wg.encode(wg.top_element(c)) for c in C.generators if c != C.identity]
    return _with_generators(wg, gens)


def tower_generators(wg: WreathGroup) -> list[WreathElement]:
    """One structured generator per tower factor, in factor order."""
    if wg.spec is None:
        raise ValueError("not a tower")
    return [wg.decode(g) for g in wg.carrier.generators]
