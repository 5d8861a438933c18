"""Named small groups, the group-expression language, and the survey catalog.

Grammar (whitespace is ignored)::

    expr   := factor ('*' factor)*
    factor := atom | 'wr' '(' expr (',' expr)* [';' ('desc' | 'asc')] ')' | '(' expr ')'
    atom   := 'C' n  (n >= 2) | 'D' n  (n >= 3, order 2n) | 'Q8' | 'S3' | 'A4' | 'E'

``*`` is the direct product; ``wr(...)`` the iterated standard wreath
product, descending unless ``;asc`` is given.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GroupExpressionError
from .group import FiniteGroup, cyclic_group, direct_product, trivial_group
from .wreath import TowerSpec, build_tower, iterated_wreath


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of an ``n``-gon, order ``2n``, on ``n`` points."""
    if n < 3:
        raise ValueError("dihedral groups start at n = 3")
    rot = bytes((i + 1) % n for i in range(n))
    ref = bytes((-i) % n for i in range(n))
    return FiniteGroup([rot, ref], f"D{n}", order=2 * n)


def symmetric_group_3() -> FiniteGroup:
    return FiniteGroup([bytes([1, 0, 2]), bytes([1, 2, 0])], "S3", order=6)


def alternating_group_4() -> FiniteGroup:
    return FiniteGroup([bytes([1, 2, 0, 3]), bytes([1, 0, 3, 2])], "A4", order=12)


def quaternion_group() -> FiniteGroup:
    """``Q8`` acting on itself by right multiplication.

    Point ``2u + s`` stands for ``(-1)^s * u`` with ``u`` in ``1, i, j, k``.
    """
    # unit products: table[a][b] = (sign, unit) for u_a * u_b
    table = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ]

    def right_mult(b: int) -> bytes:
        out = bytearray(8)
        for a in range(4):
            for s in range(2):
                sign, unit = table[a][b]
                out[2 * a + s] = 2 * unit + (s ^ sign)
        return bytes(out)

    return FiniteGroup([right_mult(1), right_mult(2)], "Q8", order=8)


@dataclass
class _Node:
    label: str
    kind: str  # "cyclic", "group"
    order_hint: int | None = None


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> GroupExpressionError:
        return GroupExpressionError(msg, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def number(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a number")
        return int(self.text[start:self.pos])

    def parse(self) -> FiniteGroup:
        G = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return G

    def expr(self) -> FiniteGroup:
        G = self.factor()
        while self.peek("*"):
            self.pos += 1
            H = self.factor()
            G = direct_product(G, H, f"{G.label}*{H.label}")
        return G

    def factor(self) -> FiniteGroup:
        self.skip()
        start = self.pos
        if self.peek("("):
            self.pos += 1
            G = self.expr()
            self.expect(")")
            return G
        if self.peek("wr"):
            self.pos += 2
            return self.wreath(start)
        for name, make in (("Q8", quaternion_group), ("S3", symmetric_group_3), ("A4", alternating_group_4)):
            if self.peek(name):
                self.pos += len(name)
                return make()
        if self.peek("E"):
            self.pos += 1
            return trivial_group()
        if self.peek("C"):
            self.pos += 1
            n = self.number()
            if n < 2:
                self.pos = start
                raise self.error(f"C{n} is not allowed: cyclic atoms start at C2 (use E for the trivial group)")
            return cyclic_group(n)
        if self.peek("D"):
            self.pos += 1
            n = self.number()
            if n < 3:
                self.pos = start
                raise self.error(f"D{n} is not allowed: dihedral atoms start at D3")
            return dihedral_group(n)
        raise self.error("expected a group")

    def wreath(self, start: int) -> FiniteGroup:
        self.expect("(")
        args = [self.expr()]
        while self.peek(","):
            self.pos += 1
            args.append(self.expr())
        bracketing = "desc"
        if self.peek(";"):
            self.pos += 1
            if self.peek("desc"):
                self.pos += 4
            elif self.peek("asc"):
                self.pos += 3
                bracketing = "asc"
            else:
                raise self.error("expected 'desc' or 'asc'")
        self.expect(")")
        if len(args) == 1:
            return args[0]
        cyclic = [_cyclic_order(G) for G in args]
        if all(n is not None and n >= 2 for n in cyclic):
            return build_tower(TowerSpec(tuple(cyclic), bracketing)).carrier
        wg = iterated_wreath(args, bracketing)
        wg.carrier.relabel(f"wr({','.join(G.label for G in args)};{bracketing})")
        return wg.carrier


def _cyclic_order(G: FiniteGroup) -> int | None:
    label = G.label
    if label.startswith("C") and label[1:].isdigit():
        return int(label[1:])
    return None


def parse_group(text: str) -> FiniteGroup:
    """Build the group named by a group expression, e.g. ``"wr(C2,C2;asc) * S3"``."""
    return _Parser(text).parse()


# Curated: every group expressible with small atoms up to order 24, plus a
# handful of larger groups for the brute-force and survey checks.
CATALOG_EXPRESSIONS: tuple[str, ...] = (
    "E",
    *(f"C{n}" for n in range(2, 25)),
    "C2*C2", "C2*C4", "C2*C2*C2", "C2*C6", "C3*C3", "C2*C8", "C4*C4", "C2*C2*C4", "C2*C10",
    "C2*C12", "C3*C6", "C2*C2*C6", "C2*C2*C2*C2", "C5*C5", "C4*C8", "C3*C9", "C6*C6", "C4*C4*C4",
    "S3", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "D12", "Q8", "A4",
    "wr(C2,C2)", "wr(C3,C2)", "wr(C2,C3)", "wr(C4,C2)", "wr(C2,C4)", "wr(C2,C2,C2;asc)", "wr(C3,C3)",
    "wr(S3,C2)",
    "S3*C2", "S3*C3", "S3*C4", "D4*C2", "Q8*C2", "Q8*C3", "A4*C2", "D4*C3", "S3*C2*C2",
    "S3*S3", "A4*C3", "Q8*C4", "D4*C4",
)


def catalog(max_order: int | None = None) -> list[tuple[str, FiniteGroup]]:
    """Catalog groups (optionally up to ``max_order``), ordered by ``(order, label)``."""
    out = []
    for expr in CATALOG_EXPRESSIONS:
        G = parse_group(expr)
        if max_order is None or G.order <= max_order:
            out.append((expr, G))
    out.sort(key=lambda lg: (lg[1].order, lg[0]))
    return out
