"""Abelian invariants, abelianization, and the normal-generation rank dg."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import prod

from . import perm as P
from .config import checkpoint, limits
from .errors import CapExceeded, NotAbelian, PerfectGroupError
from .group import (CosetQuotient, FiniteGroup, _Span, commutator_subgroup, conjugacy_classes,
                    coset_order_census, normal_closure, order_census, prime_factors, quotient_group)


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors ``d1 | d2 | ... | dk``, each at least 2."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(self.factors)
        object.__setattr__(self, "factors", fs)
        if any(d < 2 for d in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {fs}")

    @property
    def order(self) -> int:
        return prod(self.factors)

    def rank(self, p: int) -> int:
        """Rank of the ``p``-primary part."""
        return sum(1 for d in self.factors if d % p == 0)

    def primary(self) -> dict[int, list[int]]:
        """Prime -> primary exponents, largest first."""
        out: dict[int, list[int]] = {}
        for d in self.factors:
            for p in prime_factors(d):
                e = 0
                while d % p == 0:
                    d //= p
                    e += 1
                out.setdefault(p, []).append(e)
        return {p: sorted(es, reverse=True) for p, es in out.items()}

    def __add__(self, other: "AbelianInvariants") -> "AbelianInvariants":
        """Invariants of the direct sum."""
        prim = self.primary()
        for p, es in other.primary().items():
            prim.setdefault(p, []).extend(es)
        return from_primary(prim)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.factors)) + "]"


def from_primary(prim: dict[int, list[int]]) -> AbelianInvariants:
    """Merge prime-power factors into a divisibility chain."""
    k = max((len(es) for es in prim.values()), default=0)
    factors = [1] * k
    for p, es in prim.items():
        es = sorted(es, reverse=True)
        for i, e in enumerate(es):
            factors[k - 1 - i] *= p ** e
    return AbelianInvariants(tuple(f for f in factors if f > 1))


def invariants_from_census(census: Counter, group_order: int) -> AbelianInvariants:
    """Invariants of an abelian group from its element-order census.

    For each prime ``p``, ``#{x : x^(p^k) = 1} = p^(s_k)`` where ``s_k`` sums
    ``min(k, e_i)`` over the ``p``-primary exponents ``e_i``; successive
    differences count the factors of exponent at least ``k``.
    """
    prim: dict[int, list[int]] = {}
    for p in prime_factors(group_order):
        s_prev, k, at_least = 0, 0, []
        while True:
            k += 1
            count = sum(c for o, c in census.items() if (p ** k) % o == 0)
            s = 0
            while count % p == 0 and count > 1:
                count //= p
                s += 1
            if count != 1:
                raise ValueError("census is not that of an abelian group")
            if s == s_prev:
                break
            at_least.append(s - s_prev)
            s_prev = s
        # at_least[k-1] = number of primary factors with exponent >= k
        exps = []
        for k, n_k in enumerate(at_least, start=1):
            n_next = at_least[k] if k < len(at_least) else 0
            exps.extend([k] * (n_k - n_next))
        prim[p] = exps
    inv = from_primary(prim)
    if inv.order != group_order:
        raise ValueError("census is not that of an abelian group")
    return inv


def abelian_invariants(A: FiniteGroup, must_be_abelian: bool = True) -> AbelianInvariants:
    if must_be_abelian and not A.is_abelian:
        raise NotAbelian(f"{A.label} is not abelian")
    return invariants_from_census(order_census(A), A.order)


def abelianization_invariants(G: FiniteGroup) -> AbelianInvariants:
    """Invariants of ``G/[G,G]`` from the coset-order census."""
    cached = G._cache.get("ab_invariants")
    if cached is None:
        D = commutator_subgroup(G)
        if D.order == 1 and G._elements is not None:
            census = order_census(G)
        else:
            census = coset_order_census(G, D)
        cached = invariants_from_census(census, G.order // D.order)
        G._cache["ab_invariants"] = cached
    return cached


def abelianization(G: FiniteGroup) -> tuple[CosetQuotient, AbelianInvariants]:
    """``G/[G,G]`` as a coset action, with its invariant factors."""
    Q = quotient_group(G, commutator_subgroup(G), f"{G.label}_ab")
    inv = abelianization_invariants(G)
    if inv.order != Q.quotient.order:
        raise AssertionError("abelianization order mismatch")
    return Q, inv


def dg_p(G: FiniteGroup, p: int) -> int:
    """Rank of the ``p``-Sylow subgroup of the abelianization."""
    if p < 2 or prime_factors(p) != [p]:
        raise ValueError(f"{p} is not prime")
    return abelianization_invariants(G).rank(p)


def dg(G: FiniteGroup) -> int:
    """Minimal size of a normally generating subset, via the abelianization."""
    if G.is_trivial:
        return 0
    inv = abelianization_invariants(G)
    if inv.order == 1:
        raise PerfectGroupError(f"{G.label} is perfect; dg is left undefined")
    return max(inv.rank(p) for p in prime_factors(inv.order))


def dg_brute(G: FiniteGroup) -> int:
    """dg straight from the definition, by exhaustive search.

    Normal closures only depend on the conjugacy classes of the chosen
    elements, and the closure of a set is the join of the closures of its
    members.  Level ``k`` therefore holds every distinct normal subgroup that
    ``k`` elements normally generate; the first level containing ``G`` wins.
    """
    cap = limits().brute_cap
    if G.order > cap:
        raise CapExceeded(f"order {G.order} exceeds brute-force cap {cap}")
    if G.is_trivial:
        return 0
    full = G.element_set
    principal: dict[frozenset, list[bytes]] = {}
    for cls in conjugacy_classes(G):
        N = normal_closure(G, [cls[0]])
        principal.setdefault(frozenset(N.elements), N.generators)
    level: dict[frozenset, list[bytes]] = dict(principal)
    k = 1
    while full not in level:
        k += 1
        nxt: dict[frozenset, list[bytes]] = {}
        for M, mgens in level.items():
            for N, ngens in principal.items():
                if N <= M:
                    continue
                span = _Span(G.degree)
                for g in mgens:
                    span.add(g)
                for g in ngens:
                    span.add(g)
                key = frozenset(span.elements)
                if key not in nxt:
                    nxt[key] = list(span.gens)
            checkpoint()
        if not nxt:
            raise AssertionError("normal-closure search stalled below the whole group")
        level = nxt
    return k
