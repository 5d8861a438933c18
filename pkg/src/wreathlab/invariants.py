"""Semiabelian certificates, wreath length, and the searches behind them.

Tower epimorphisms are found and checked through a presentation of the
descending tower.  ``C_n wr W`` is generated by ``a`` (the generator of
``C_n`` placed at the identity of ``W``) together with ``W``, subject to
``W``'s relations, ``a^n = 1`` and ``[a, a^w] = 1`` for every ``w`` in ``W``.
Unwinding this along ``C_1 wr (C_2 wr (... wr C_r))``, elements
``t_1, ..., t_r`` of ``G`` are the images of the tower generators under a
homomorphism exactly when, for every ``i``,

* ``t_i^{n_i} = 1``, and
* ``t_i`` commutes with ``k^-1 t_i k`` for every ``k`` in ``<t_{i+1}, ..., t_r>``;

the homomorphism is onto when the ``t_i`` generate ``G``.  Only the subgroup
``K = <t_{i+1}, ..., t_r>`` matters for the choice of ``t_i``, so searches
walk over subgroups from the last factor back to the first, which is
exhaustive and far smaller than the space of tuples.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from math import gcd, isqrt, prod
from typing import Iterable, Sequence

from . import perm as P
from .abelian import AbelianInvariants, abelian_invariants, abelianization_invariants, dg, dg_p
from .config import checkpoint, limits
from .errors import (BudgetExceeded, CapExceeded, ConstructionDefect, NotNilpotent, NotSolvable,
                     PerfectGroupError, WreathLabError)
from .group import (FiniteGroup, _Span, _coset_labels, conjugacy_classes, derived_length, exponent,
                    is_nilpotent, is_normal, normal_closure, order_census, prime_factors, small_generating_set,
                    subgroup, sylow_subgroup)
from .homomorphism import SCHEMA, Homomorphism, _fingerprint, is_isomorphic, verify_homomorphism
from .wreath import TowerSpec, build_tower

# towers up to this order are also certified with the graph criterion
GRAPH_CHECK_LIMIT = 1 << 17


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# -- tower epimorphisms -------------------------------------------------------

def tower_relations_hold(orders: Sequence[int], images: Sequence[bytes], G: FiniteGroup) -> bool:
    """The presentation conditions for ``images`` (not surjectivity).

    Deliberately written against full element lists rather than the search's
    incremental subgroups so that it can audit search results.
    """
    if len(orders) != len(images):
        return False
    for i, (n, t) in enumerate(zip(orders, images)):
        if t not in G or P.power(t, n) != G.identity:
            return False
        rest = [x for x in images[i + 1:]]
        K = subgroup(G, rest).elements if rest else (G.identity,)
        ti = P.inv(t)
        for k in K:
            c = P.mul(P.mul(P.inv(k), t), k)
            if P.mul(P.mul(ti, P.inv(c)), P.mul(t, c)) != G.identity:
                return False
    return True


def tower_dg_p(orders: Sequence[int], p: int) -> int:
    """dg_p of a descending cyclic tower: the number of factors divisible by ``p``."""
    return sum(1 for n in orders if n % p == 0)


def tower_dg(orders: Sequence[int]) -> int:
    """dg of a descending cyclic tower: the largest dg_p."""
    primes = sorted({p for n in orders for p in prime_factors(n)})
    return max((tower_dg_p(orders, p) for p in primes), default=0)


@dataclass
class TowerEpimorphism:
    """Images ``t_1, ..., t_r`` of the tower generators, with their checks."""

    spec: TowerSpec
    target: FiniteGroup
    images: tuple[bytes, ...]
    relations_ok: bool = False
    surjective: bool = False
    graph: Homomorphism | None = None

    @property
    def verified(self) -> bool:
        graph_ok = self.graph is None or (self.graph.verified and self.graph.surjective)
        return self.relations_ok and self.surjective and graph_ok

    @property
    def methods(self) -> list[str]:
        out = ["presentation"]
        if self.graph is not None:
            out.append("graph")
        return out

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "tower_epimorphism",
            "tower": self.spec.expr(),
            "orders": list(self.spec.orders),
            "bracketing": self.spec.bracketing,
            "target": {"label": self.target.label, "order": self.target.order},
            "images": [list(t) for t in self.images],
            "image_orders": [P.order(t) for t in self.images],
            "methods": self.methods,
            "relations_ok": self.relations_ok,
            "graph_verified": None if self.graph is None else self.graph.verified,
            "surjective": self.surjective,
            "verified": self.verified,
        }


def certify_tower_epi(spec: TowerSpec, G: FiniteGroup, images: Sequence[bytes],
                      graph: bool | None = None) -> TowerEpimorphism:
    """Check ``images`` against the presentation and, for small towers, the graph criterion."""
    if spec.bracketing != "desc":
        raise ValueError("tower epimorphisms are certified for descending towers")
    images = tuple(bytes(t) for t in images)
    cert = TowerEpimorphism(spec, G, images)
    cert.relations_ok = tower_relations_hold(spec.orders, images, G)
    cert.surjective = len(_Span_of(G, images).elements) == G.order
    if graph is None:
        graph = spec.projected_order(GRAPH_CHECK_LIMIT) <= GRAPH_CHECK_LIMIT and spec.projected_degree() <= limits().degree_cap
    if graph:
        tower = build_tower(spec, allow_trivial=True).carrier
        cert.graph = verify_homomorphism(tower, G, images, f"epimorphism from {spec.expr()}")
    return cert


def _Span_of(G: FiniteGroup, gens: Iterable[bytes]) -> _Span:
    span = _Span(G.degree)
    for g in gens:
        span.add(g)
    return span


@dataclass
class _Search:
    """Backward walk over subgroups ``K = <t_{i+1}, ..., t_r>``."""

    G: FiniteGroup
    budget: int
    work: int = 0
    exhausted: bool = False

    def admissible(self, t: bytes, K: _Span) -> bool:
        """``t`` commutes with all of its conjugates under ``K``."""
        seen = {t}
        stack = [t]
        while stack:
            x = stack.pop()
            for k in K.gens:
                y = P.mul(P.mul(P.inv(k), x), k)
                if y not in seen:
                    if P.mul(t, y) != P.mul(y, t):
                        return False
                    seen.add(y)
                    stack.append(y)
        return True

    def step(self, K: _Span, candidates: Sequence[bytes]):
        for t in candidates:
            self.work += 1
            if self.work > self.budget:
                self.exhausted = True
                raise BudgetExceeded(f"tower search over {self.G.label} exceeded {self.budget} steps")
            if t in K.set or not self.admissible(t, K):
                continue
            nxt = _Span(self.G.degree)
            for g in K.gens:
                nxt.add(g)
            nxt.add(t)
            yield t, nxt
        checkpoint()


def _reconstruct(parents: dict, key: frozenset) -> list[bytes]:
    out = []
    while parents[key] is not None:
        prev, t = parents[key]
        out.append(t)
        key = prev
    return out  # t_1 first: the walk added t_r first


def shortest_tower_images(G: FiniteGroup, max_length: int | None = None,
                          budget: int | None = None) -> tuple[list[bytes] | None, int, int]:
    """Shortest ``t_1..t_r`` (all nontrivial) satisfying the presentation and generating ``G``.

    Returns ``(images or None, levels refuted, work)``.  Levels are explored
    breadth first with every subgroup visited once, so ``levels refuted = k``
    means no tower of length ``<= k`` maps onto ``G``.  Raises
    :class:`BudgetExceeded` when the step budget runs out.
    """
    budget = limits().tuple_budget if budget is None else budget
    search = _Search(G, budget)
    e = G.identity
    candidates = [x for x in G.elements if x != e]
    start = _Span(G.degree)
    key0 = frozenset(start.set)
    parents: dict[frozenset, tuple | None] = {key0: None}
    frontier = [(key0, start)]
    level = 0
    while frontier and (max_length is None or level < max_length):
        level += 1
        nxt = []
        for key, K in frontier:
            for t, K2 in search.step(K, candidates):
                k2 = frozenset(K2.set)
                if k2 in parents:
                    continue
                parents[k2] = (key, t)
                if len(K2.elements) == G.order:
                    return _reconstruct(parents, k2), level - 1, search.work
                nxt.append((k2, K2))
        frontier = nxt
    return None, level, search.work


def epi_exists(spec: TowerSpec, G: FiniteGroup, budget: int | None = None) -> TowerEpimorphism | None:
    """An epimorphism from the descending tower ``spec`` onto ``G``, or ``None``.

    ``None`` is an exhaustive refutation; running out of budget raises
    :class:`BudgetExceeded` instead.  Images are restricted to elements whose
    order divides the matching factor.
    """
    if spec.bracketing != "desc":
        raise ValueError("only descending towers are searched")
    budget = limits().tuple_budget if budget is None else budget
    r = spec.length
    if G.order ** r > budget:
        raise BudgetExceeded(f"|G|^r = {G.order ** r} exceeds the tuple budget {budget}")
    # Lagrange: the tower order must be a multiple of |G|
    tower_order = spec.projected_order(1 << 64)
    if tower_order <= 1 << 64 and tower_order % G.order:
        return None
    search = _Search(G, budget * max(1, r))
    by_level = [[x for x in G.elements if spec.orders[i] % P.order(x) == 0] for i in range(r)]
    start = _Span(G.degree)
    frontier: dict[frozenset, tuple[_Span, list[bytes]]] = {frozenset(start.set): (start, [])}
    for i in reversed(range(r)):
        nxt: dict[frozenset, tuple[_Span, list[bytes]]] = {}
        for K, chosen in frontier.values():
            # the identity keeps K and is always admissible
            key = frozenset(K.set)
            if G.identity in by_level[i] and key not in nxt:
                nxt[key] = (K, [G.identity] + chosen)
            for t, K2 in search.step(K, by_level[i]):
                k2 = frozenset(K2.set)
                if k2 not in nxt:
                    nxt[k2] = (K2, [t] + chosen)
        frontier = nxt
    for K, chosen in frontier.values():
        if len(K.elements) == G.order:
            cert = certify_tower_epi(spec, G, chosen)
            if not cert.verified:
                raise ConstructionDefect(f"search produced an invalid epimorphism {spec.expr()} -> {G.label}")
            return cert
    return None


# -- semiabelian groups -------------------------------------------------------------

@dataclass
class SemiabelianStep:
    """``current = A H`` with ``A`` abelian normal in ``current`` and ``H`` proper."""

    current: FiniteGroup
    A: FiniteGroup
    H: FiniteGroup

    def to_json(self) -> dict:
        return {"group_order": self.current.order, "A_order": self.A.order,
                "A_invariants": list(abelian_invariants(self.A).factors),
                "A_generators": [list(a) for a in self.A.generators],
                "H_order": self.H.order, "H_generators": [list(h) for h in self.H.generators]}


@dataclass
class SemiabelianCertificate:
    group: FiniteGroup
    verdict: bool
    chain: list[SemiabelianStep] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "kind": "semiabelian", "group": self.group.label,
                "order": self.group.order, "verdict": "yes" if self.verdict else "no",
                "chain": [s.to_json() for s in self.chain], "note": self.note}


def validate_semiabelian_chain(cert: SemiabelianCertificate) -> list[str]:
    """Re-check every step from scratch; returns a list of problems (empty if valid)."""
    problems = []
    cur = cert.group
    for i, step in enumerate(cert.chain):
        A, H = step.A, step.H
        if step.current.order != cur.order or not all(g in cur for g in step.current.generators):
            problems.append(f"step {i}: stage does not continue the chain")
        if any(a not in cur for a in A.elements) or any(h not in cur for h in H.elements):
            problems.append(f"step {i}: A or H is not inside the current group")
        if any(P.mul(x, y) != P.mul(y, x) for x in A.elements for y in A.generators):
            problems.append(f"step {i}: A is not abelian")
        if not is_normal(cur, A):
            problems.append(f"step {i}: A is not normal")
        if H.order >= cur.order:
            problems.append(f"step {i}: H is not proper")
        product = {P.mul(a, h) for a in A.elements for h in H.elements}
        if len(product) != cur.order:
            problems.append(f"step {i}: AH is not the whole group")
        cur = H
    if cert.verdict and not cur.is_abelian:
        problems.append("chain does not end at an abelian group")
    return problems


def normal_subgroups(G: FiniteGroup) -> list[FiniteGroup]:
    """All normal subgroups, as joins of normal closures of single classes."""
    cached = G._cache.get("normal_subgroups")
    if cached is not None:
        return cached
    principal: dict[frozenset, list[bytes]] = {}
    for cls in conjugacy_classes(G):
        N = normal_closure(G, [cls[0]])
        principal.setdefault(frozenset(N.elements), list(N.generators))
    found: dict[frozenset, list[bytes]] = dict(principal)
    frontier = list(found.items())
    while frontier:
        nxt = []
        for M, mg in frontier:
            for N, ng in principal.items():
                if N <= M:
                    continue
                span = _Span_of(G, mg + ng)
                key = frozenset(span.elements)
                if key not in found:
                    found[key] = list(span.gens)
                    nxt.append((key, list(span.gens)))
        frontier = nxt
        checkpoint()
    out = [FiniteGroup(g or [G.identity], "", _elements=_Span_of(G, g).elements) for g in found.values()]
    out.sort(key=lambda N: -N.order)
    G._cache["normal_subgroups"] = out
    return out


def _subgroups_of_abelian(A: FiniteGroup) -> list[FiniteGroup]:
    seen: dict[frozenset, list[bytes]] = {frozenset([A.identity]): []}
    frontier = [[]]
    while frontier:
        nxt = []
        for gens in frontier:
            base = _Span_of(A, gens)
            for x in A.elements:
                if x in base.set:
                    continue
                span = _Span_of(A, gens + [x])
                key = frozenset(span.elements)
                if key not in seen:
                    seen[key] = gens + [x]
                    nxt.append(gens + [x])
        frontier = nxt
    out = [FiniteGroup(g or [A.identity], "", _elements=_Span_of(A, g).elements) for g in seen.values()]
    out.sort(key=lambda B: B.order)
    return out


_MEMO_LOCK = threading.Lock()
_MEMO: dict[tuple, list[tuple[FiniteGroup, SemiabelianCertificate]]] = {}


def _memo_lookup(G: FiniteGroup) -> SemiabelianCertificate | None:
    with _MEMO_LOCK:
        entries = list(_MEMO.get(_fingerprint(G), []))
    for K, cert in entries:
        iso = is_isomorphic(K, G)
        if iso is None:
            continue
        if not cert.verdict:
            return SemiabelianCertificate(G, False, note=cert.note)
        chain = []
        cur = G
        for step in cert.chain:
            A = subgroup(G, [iso.apply(a) for a in step.A.generators])
            H = subgroup(G, [iso.apply(h) for h in step.H.generators])
            chain.append(SemiabelianStep(cur, A, H))
            cur = H
        out = SemiabelianCertificate(G, True, chain)
        if validate_semiabelian_chain(out):
            raise ConstructionDefect(f"memoized chain did not transfer to {G.label}")
        return out
    return None


def _memo_store(G: FiniteGroup, cert: SemiabelianCertificate) -> None:
    with _MEMO_LOCK:
        _MEMO.setdefault(_fingerprint(G), []).append((G, cert))


def clear_semiabelian_memo() -> None:
    with _MEMO_LOCK:
        _MEMO.clear()


def is_semiabelian(G: FiniteGroup, budget: int | None = None) -> SemiabelianCertificate:
    """Decide membership by searching for ``G = A H`` recursively.

    A semiabelian group is abelian, or ``A H`` with ``A`` a nontrivial
    abelian normal subgroup and ``H`` a proper semiabelian subgroup.  For a
    fixed ``A``, every such ``H`` is ``<L, H & A>`` where ``L`` lifts a fixed
    generating set of ``G/A``, so the search runs over lifts and subgroups of
    ``A``.
    """
    cap = limits().brute_cap
    if G.order > cap:
        raise CapExceeded(f"semiabelian search is limited to order {cap}")
    counter = [limits().tuple_budget if budget is None else budget]
    return _semiabelian(G, counter)


def _semiabelian(G: FiniteGroup, counter: list[int]) -> SemiabelianCertificate:
    if G.is_abelian:
        return SemiabelianCertificate(G, True)
    hit = _memo_lookup(G)
    if hit is not None:
        return hit
    try:
        derived_length(G)
    except NotSolvable:
        cert = SemiabelianCertificate(G, False, note="not solvable, so no abelian normal factorization")
        _memo_store(G, cert)
        return cert
    gens = small_generating_set(G)
    for A in normal_subgroups(G):
        if A.order == 1 or A.order == G.order or not A.is_abelian:
            continue
        # generators of G modulo A
        quot: list[bytes] = []
        span = _Span_of(G, A.generators)
        for g in gens:
            if span.add(g):
                quot.append(g)
        lift_choices = [[P.mul(g, a) for a in A.elements] for g in quot]
        subs = _subgroups_of_abelian(A)
        tried: set[frozenset] = set()
        for lifts in itertools.product(*lift_choices):
            for B in subs:
                counter[0] -= 1
                if counter[0] < 0:
                    raise BudgetExceeded(f"semiabelian search over {G.label} ran out of budget")
                H = subgroup(G, list(lifts) + list(B.generators))
                if H.order == G.order:
                    continue
                key = frozenset(H.elements)
                if key in tried:
                    continue
                tried.add(key)
                sub = _semiabelian(H, counter)
                if sub.verdict:
                    cert = SemiabelianCertificate(G, True, [SemiabelianStep(G, A, H)] + sub.chain)
                    _memo_store(G, cert)
                    return cert
                checkpoint()
    cert = SemiabelianCertificate(G, False, note="no abelian normal A and proper semiabelian H with AH = G")
    _memo_store(G, cert)
    return cert


# -- wreath length ------------------------------------------------------------------

@dataclass
class WlCertificate:
    group: FiniteGroup
    dg_value: int | None
    dl_value: int | None
    lower: int
    lower_reasons: list[str]
    upper: int | None = None
    upper_reason: str = ""
    witness: TowerEpimorphism | None = None
    exact: int | None = None
    refuted_up_to: int = 0
    search_work: int = 0
    budget: int = 0
    budget_exhausted: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA, "kind": "wreath_length", "group": self.group.label, "order": self.group.order,
            "dg": self.dg_value, "dl": self.dl_value,
            "lower": self.lower, "lower_reasons": list(self.lower_reasons),
            "upper": self.upper, "upper_reason": self.upper_reason,
            "witness": self.witness.to_json() if self.witness else None,
            "exact": self.exact,
            "search": {"refuted_up_to_length": self.refuted_up_to, "work": self.search_work,
                       "budget": self.budget, "budget_exhausted": self.budget_exhausted},
            "notes": list(self.notes),
        }


def _desc_spec(images: Sequence[bytes]) -> TowerSpec:
    return TowerSpec(tuple(max(1, P.order(t)) for t in images), "desc")


def _is_cyclic(G: FiniteGroup) -> bool:
    return G.is_abelian and len(abelian_invariants(G)) <= 1


def wl_bounds(G: FiniteGroup, budget: int | None = None) -> WlCertificate:
    """Bounds on the wreath length, exact whenever they meet or the search closes the gap."""
    budget = limits().tuple_budget if budget is None else budget
    try:
        dl_value = derived_length(G)
    except NotSolvable:
        cert = WlCertificate(G, None, None, 1, ["definition"], budget=budget)
        cert.notes.append("not solvable, hence not semiabelian: wreath length undefined")
        return cert
    try:
        dg_value = dg(G)
    except PerfectGroupError:
        dg_value = None
    lower, reasons = 1, ["definition"]
    if dg_value is not None and dg_value >= lower:
        lower, reasons = (dg_value, ["dg"]) if dg_value > lower else (lower, reasons + ["dg"])
    if dl_value > lower:
        lower, reasons = dl_value, ["dl"]
    elif dl_value == lower:
        reasons.append("dl")
    cert = WlCertificate(G, dg_value, dl_value, lower, reasons, budget=budget)

    def offer(images: Sequence[bytes], reason: str) -> None:
        spec = _desc_spec(images)
        epi = certify_tower_epi(spec, G, images)
        if not epi.verified:
            raise ConstructionDefect(f"{reason} witness for {G.label} failed verification")
        if cert.upper is None or spec.length < cert.upper:
            cert.upper, cert.upper_reason, cert.witness = spec.length, reason, epi

    if G.is_trivial:
        offer([G.identity], "trivial group")
    elif _is_cyclic(G):
        offer([max(G.elements, key=P.order)], "cyclic")
    else:
        spec = G.tower
        if spec is not None and all(n > 1 for n in spec.orders):
            if tower_relations_hold(spec.orders, G.generators, G):
                offer(list(G.generators), "tower generators")
        if (cert.upper is None or cert.upper > lower) and is_nilpotent(G) and G.order <= limits().brute_cap:
            if is_semiabelian(G).verdict:
                _, epi = nilpotent_tower(G, budget)
                offer(list(epi.images), "nilpotent construction")
    if cert.upper is not None and cert.upper == lower:
        cert.exact = lower
        cert.refuted_up_to = lower - 1
        return cert
    try:
        images, refuted, work = shortest_tower_images(G, budget=budget)
    except BudgetExceeded:
        cert.budget_exhausted = True
        cert.search_work = budget
        cert.notes.append("search budget exhausted before the bounds met")
        return cert
    cert.search_work = work
    cert.refuted_up_to = refuted
    if images is None:
        cert.notes.append("no descending cyclic tower maps onto this group")
        return cert
    offer(images, "exhaustive search")
    cert.exact = len(images)
    return cert


@dataclass
class CharacterizationResult:
    group: FiniteGroup
    dg_value: int
    has_witness: bool
    prime: int | None = None
    epimorphism: TowerEpimorphism | None = None
    tower_dg: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "kind": "wl_dg_characterization", "group": self.group.label,
                "dg": self.dg_value, "has_witness": self.has_witness, "prime": self.prime,
                "witness": self.epimorphism.to_json() if self.epimorphism else None,
                "tower_dg": self.tower_dg, "note": self.note}


def check_wl_eq_dg_characterization(G: FiniteGroup, budget: int | None = None) -> CharacterizationResult:
    """Look for a prime ``p`` and a dg-preserving epimorphism from a length-dg tower
    whose factor orders are all divisible by ``p``.

    Factor orders are ``lcm(ord t_i, p)``; images may be trivial.  With
    ``r = dg(G)`` such a tower always has dg exactly ``r``, which is checked
    both by the counting formula and, for small towers, directly.
    """
    d = dg(G)
    if d == 0:
        return CharacterizationResult(G, 0, False, note="trivial group: no positive-length witness has dg 0")
    inv = abelianization_invariants(G)
    p = min(q for q in prime_factors(inv.order) if inv.rank(q) == d)
    images, refuted, _ = shortest_tower_images(G, max_length=d, budget=budget)
    if images is None:
        return CharacterizationResult(G, d, False, note=f"no tower of length {d} maps onto the group "
                                                        f"(exhaustive up to length {refuted})")
    images = [G.identity] * (d - len(images)) + list(images)
    spec = TowerSpec(tuple(_lcm(P.order(t), p) for t in images), "desc")
    epi = certify_tower_epi(spec, G, images)
    t_dg = tower_dg(spec.orders)
    if spec.projected_order(GRAPH_CHECK_LIMIT) <= GRAPH_CHECK_LIMIT and spec.projected_degree() <= limits().degree_cap:
        direct = dg(build_tower(spec).carrier)
        if direct != t_dg:
            raise ConstructionDefect(f"tower dg formula disagrees with direct computation for {spec.expr()}")
    if not epi.verified or t_dg != d:
        raise ConstructionDefect(f"characterization witness for {G.label} failed verification")
    return CharacterizationResult(G, d, True, p, epi, t_dg)


def nilpotent_tower(G: FiniteGroup, budget: int | None = None) -> tuple[TowerSpec, TowerEpimorphism]:
    """A length-dg tower onto a nilpotent semiabelian group.

    Each Sylow subgroup gets a shortest tower by search (length dg(P));
    towers are padded with trivial factors at the end and merged factorwise,
    ``C_j = prod_p C_{p,j}`` with images ``T_j = prod_p t_{p,j}``.
    """
    if not is_nilpotent(G):
        raise NotNilpotent(f"{G.label} is not nilpotent")
    if G.is_trivial:
        spec = TowerSpec((1,), "desc")
        return spec, certify_tower_epi(spec, G, [G.identity])
    d = dg(G)
    per_prime = []
    for p in prime_factors(G.order):
        S = sylow_subgroup(G, p)
        k = dg(S)
        images, refuted, _ = shortest_tower_images(S, max_length=k, budget=budget)
        if images is None or len(images) != k:
            raise ConstructionDefect(f"no length-{k} tower onto the Sylow {p}-subgroup of {G.label}")
        per_prime.append(list(images) + [G.identity] * (d - k))
    merged = [P.mul(*col) if len(col) == 2 else _multi(col, G.identity) for col in zip(*per_prime)]
    spec = TowerSpec(tuple(prod(P.order(t) for t in col) for col in zip(*per_prime)), "desc")
    epi = certify_tower_epi(spec, G, merged)
    if not epi.verified:
        raise ConstructionDefect(f"merged Sylow towers do not map onto {G.label}")
    return spec, epi


def _multi(elements: Sequence[bytes], identity: bytes) -> bytes:
    out = identity
    for x in elements:
        out = P.mul(out, x)
    return out


def dl_tower_check(orders: Sequence[int]) -> dict:
    """Derived length of both bracketings of a cyclic tower, against its length."""
    if any(n < 2 for n in orders):
        raise ValueError("all factors must be nontrivial")
    r = len(orders)
    out = {"orders": list(orders), "length": r}
    for b in ("desc", "asc"):
        out[b] = derived_length(build_tower(TowerSpec(tuple(orders), b)).carrier)
    out["ok"] = out["desc"] == r and out["asc"] == r
    return out


# -- the cyclic base case ----------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def cyclic_conductor(N: int, bound: int = 10**9) -> dict:
    """Smallest prime ``p = 1 (mod N)``.

    ``Q(zeta_p)`` is cyclic of degree ``p - 1`` over ``Q`` and ramified only
    at ``p``, so its degree-``N`` subfield realizes ``C_N`` with one
    ramified prime, tamely when ``p`` does not divide ``N``.
    """
    if N < 2:
        raise ValueError("N must be at least 2 (the trivial group needs no ramified prime)")
    p = N + 1
    while p <= bound:
        if _is_prime(p):
            return {"schema": SCHEMA, "kind": "cyclic_conductor", "N": N, "p": p, "group": f"C{N}",
                    "ramified_primes": 1, "congruence": f"{p} = 1 (mod {N})",
                    "primality": "trial division", "field": f"degree-{N} subfield of Q(zeta_{p})"}
        p += N
    raise WreathLabError(f"no prime = 1 (mod {N}) below {bound}")


# -- survey ---------------------------------------------------------------------------

@dataclass
class SurveyRow:
    label: str
    order: int
    invariants: list[int]
    dg: int | None
    dl: int | None
    semiabelian: str
    wl_lower: int | None
    wl_upper: int | None
    wl_exact: int | None
    wl_eq_dg: bool | None
    witness_prime: int | None = None
    witness_tower: str | None = None
    isomorphic_to: str | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"label": self.label, "order": self.order, "invariants": list(self.invariants), "dg": self.dg,
                "dl": self.dl, "semiabelian": self.semiabelian, "wl_lower": self.wl_lower,
                "wl_upper": self.wl_upper, "wl_exact": self.wl_exact, "wl_eq_dg": self.wl_eq_dg,
                "witness_prime": self.witness_prime, "witness_tower": self.witness_tower,
                "isomorphic_to": self.isomorphic_to, "notes": list(self.notes)}

    TSV_FIELDS = ("label", "order", "invariants", "dg", "dl", "semiabelian", "wl_lower", "wl_upper", "wl_exact",
                  "wl_eq_dg", "witness_prime", "witness_tower", "isomorphic_to")

    def tsv(self) -> str:
        def cell(v):
            if v is None:
                return "-"
            if isinstance(v, list):
                return "[" + ",".join(map(str, v)) + "]"
            if isinstance(v, bool):
                return "yes" if v else "no"
            return str(v)
        return "\t".join(cell(getattr(self, f)) for f in self.TSV_FIELDS)


def survey_row(label: str, G: FiniteGroup, budget: int | None = None) -> SurveyRow:
    inv = abelianization_invariants(G)
    notes: list[str] = []
    try:
        sa = is_semiabelian(G)
        verdict = "yes" if sa.verdict else "no"
    except (CapExceeded, BudgetExceeded) as exc:
        verdict = "unknown"
        notes.append(f"semiabelian: {exc}")
    wl = wl_bounds(G, budget)
    notes.extend(wl.notes)
    row = SurveyRow(label, G.order, list(inv.factors), wl.dg_value, wl.dl_value, verdict, wl.lower, wl.upper,
                    wl.exact, None if wl.exact is None or wl.dg_value is None else wl.exact == wl.dg_value)
    if row.wl_eq_dg:
        ch = check_wl_eq_dg_characterization(G, budget)
        if ch.has_witness:
            row.witness_prime = ch.prime
            row.witness_tower = ch.epimorphism.spec.expr()
    return row


def survey(groups: Sequence[tuple[str, FiniteGroup]], budget: int | None = None) -> list[SurveyRow]:
    """One row per group, ordered by ``(order, label)``; isomorphic duplicates are noted."""
    ordered = sorted(groups, key=lambda lg: (lg[1].order, lg[0]))
    rows: list[SurveyRow] = []
    seen: list[tuple[str, FiniteGroup]] = []
    for label, G in ordered:
        row = survey_row(label, G, budget)
        for other_label, H in seen:
            if H.order == G.order and G.order <= limits().brute_cap and is_isomorphic(H, G) is not None:
                row.isomorphic_to = other_label
                break
        seen.append((label, G))
        rows.append(row)
    return rows
