"""Permutations of ``{0, ..., n-1}`` under the right-action convention.

A permutation is stored as a ``bytes`` object whose ``i``-th entry is the
image of point ``i``.  Products compose left to right, ``x.(pq) = (x.p).q``,
which makes the product a single ``bytes.translate`` call.  Group algorithms
work on plain ``bytes``; :class:`Perm` is the validated public face and,
being a ``bytes`` subclass, mixes freely with them in sets and dicts.
"""

from __future__ import annotations

from functools import reduce
from math import gcd
from typing import Iterable, Sequence

_TAIL = bytes(range(256))


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def mul(p: bytes, q: bytes) -> bytes:
    """Unchecked product ``pq`` (apply ``p`` first)."""
    return p.translate(q + _TAIL[len(q):])


def table(q: bytes) -> bytes:
    """Translation table for right multiplication by ``q``."""
    return q + _TAIL[len(q):]


def inv(p: bytes) -> bytes:
    return bytes(sorted(range(len(p)), key=p.__getitem__))


def ident(degree: int) -> bytes:
    return _TAIL[:degree]


def conj(x: bytes, g: bytes) -> bytes:
    """``g^-1 x g``."""
    return mul(mul(inv(g), x), g)


def comm(x: bytes, y: bytes) -> bytes:
    """``x^-1 y^-1 x y``."""
    return mul(mul(inv(x), inv(y)), mul(x, y))


def power(p: bytes, k: int) -> bytes:
    n = len(p)
    if k < 0:
        p, k = inv(p), -k
    result = ident(n)
    base = p
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def cycles(p: bytes) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its smallest point."""
    seen = bytearray(len(p))
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = 1
        x = p[start]
        while x != start:
            cyc.append(x)
            seen[x] = 1
            x = p[x]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def order(p: bytes) -> int:
    return reduce(_lcm, (len(c) for c in cycles(p)), 1)


class Perm(bytes):
    """A validated permutation of ``degree`` points."""

    def __new__(cls, images: Iterable[int]):
        data = bytes(images)
        if not data:
            raise ValueError("a permutation needs at least one point")
        if sorted(data) != list(range(len(data))):
            raise ValueError(f"not a permutation of 0..{len(data) - 1}: {list(data)}")
        return super().__new__(cls, data)

    @classmethod
    def _wrap(cls, data: bytes) -> "Perm":
        return bytes.__new__(cls, data)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls._wrap(ident(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cyc: Sequence[int]) -> "Perm":
        images = list(range(degree))
        for c in cyc:
            for a, b in zip(c, list(c[1:]) + [c[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __mul__(self, other: bytes) -> "Perm":  # type: ignore[override]
        return compose(self, other)

    def __pow__(self, k: int) -> "Perm":
        return Perm._wrap(power(self, k))

    def inverse(self) -> "Perm":
        return Perm._wrap(inv(self))

    def order(self) -> int:
        return order(self)

    def cycles(self) -> list[tuple[int, ...]]:
        return cycles(self)

    def __repr__(self) -> str:
        cyc = cycles(self)
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Perm{body}[{len(self)}]"


def identity(degree: int) -> Perm:
    return Perm.identity(degree)


def compose(p: bytes, q: bytes) -> Perm:
    """``pq``: first ``p`` then ``q``, so ``x.(pq) = (x.p).q``."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return Perm._wrap(mul(p, q))


def invert(p: bytes) -> Perm:
    return Perm._wrap(inv(p))


def shift(p: bytes, offset: int, degree: int) -> bytes:
    """Embed ``p`` on points ``offset..offset+len(p)-1`` of a larger degree."""
    out = bytearray(range(degree))
    for i, x in enumerate(p):
        out[offset + i] = offset + x
    return bytes(out)
