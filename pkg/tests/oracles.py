"""Independent reference implementations used only by the tests.

These use plain lists and tuples, deliberately avoiding the library's
bytes-based fast paths, so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import itertools
from collections import Counter


def apply_then(p, q):
    """Two-line evaluation: x -> q(p(x))."""
    return tuple(q[p[x]] for x in range(len(p)))


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def generate(gens, degree):
    """Closure by repeated multiplication until nothing new appears."""
    e = tuple(range(degree))
    elems = {e}
    frontier = [e]
    gens = [tuple(g) for g in gens]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = apply_then(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return frozenset(elems)


def all_subgroups(elements, degree):
    """Every subgroup, found as closures of pairs of elements (enough for S3, D4, Q8)."""
    elements = [tuple(x) for x in elements]
    out = set()
    for a, b in itertools.combinations_with_replacement(elements, 2):
        out.add(generate([a, b], degree))
    return out


def normal_closure_brute(elements, S, degree):
    elements = [tuple(x) for x in elements]
    conj = {apply_then(apply_then(inverse(g), tuple(s)), g) for g in elements for s in S}
    return generate(conj, degree) if conj else frozenset({tuple(range(degree))})


def commutator_brute(elements, degree):
    elements = [tuple(x) for x in elements]
    comms = {apply_then(apply_then(inverse(x), inverse(y)), apply_then(x, y)) for x in elements for y in elements}
    return generate(comms, degree)


def order_of(p):
    e = tuple(range(len(p)))
    x, k = tuple(p), 1
    while x != e:
        x = apply_then(x, p)
        k += 1
    return k


def order_census(elements):
    return Counter(order_of(tuple(x)) for x in elements)


def census_of_invariants(factors):
    """Element-order census of the abelian group with these cyclic factors."""
    from math import gcd
    census = Counter()
    for combo in itertools.product(*[range(n) for n in factors]):
        o = 1
        for a, n in zip(combo, factors):
            k = n // gcd(a, n)
            o = o * k // gcd(o, k)
        census[o] += 1
    return census


def is_hom_by_table(dom_elements, images_of, mul_dom, mul_cod):
    """Check f(xy) = f(x)f(y) on every pair, given an explicit element table."""
    for x in dom_elements:
        for y in dom_elements:
            if images_of[mul_dom(x, y)] != mul_cod(images_of[x], images_of[y]):
                return False
    return True


def primes_1_mod(N, limit):
    return [p for p in range(2, limit) if all(p % d for d in range(2, int(p ** 0.5) + 1)) and p % N == 1]
