"""Recursive-descent parser for the small poset expression language.

    expr  := "chain(" INT ")" | "antichain(" INT ")"
           | "osum(" args ")" | "dsum(" args ")"
           | "prod(" expr "," expr {"," expr} ")"
           | "diamonds(" INT "," INT ")" | "divisor(" INT ")"
    args  := item {"," item}
    item  := expr | INT        (a bare INT means antichain(INT))

Whitespace is ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import poset as P


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        self.msg, self.text, self.pos = msg, text, pos
        super().__init__(f"{msg} at position {pos}\n  {text}\n  {' ' * pos}^")


class ExprSemanticError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    op: str
    args: tuple[Union["Node", int], ...]

    def __str__(self) -> str:
        return f"{self.op}({','.join(str(a) for a in self.args)})"


INT_OPS = {"chain": 1, "antichain": 1, "divisor": 1, "diamonds": 2}
LIST_OPS = {"osum", "dsum"}
OPS = set(INT_OPS) | LIST_OPS | {"prod"}

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<punct>[(),]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ExprSyntaxError(f"unexpected character {text[bad]!r}", text, bad)
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("end", "", len(self.text))

    def expect(self, value: str) -> None:
        kind, v, pos = self.peek()
        if v != value or kind != "punct":
            got = "end of input" if kind == "end" else repr(v)
            raise ExprSyntaxError(f"expected {value!r}, got {got}", self.text, pos)
        self.i += 1

    def integer(self) -> int:
        kind, v, pos = self.peek()
        if kind != "int":
            got = "end of input" if kind == "end" else repr(v)
            raise ExprSyntaxError(f"expected an integer, got {got}", self.text, pos)
        self.i += 1
        return int(v)

    def expr(self) -> Node:
        kind, v, pos = self.peek()
        if kind != "name":
            got = "end of input" if kind == "end" else repr(v)
            raise ExprSyntaxError(f"expected a constructor name, got {got}", self.text, pos)
        if v not in OPS:
            raise ExprSyntaxError(f"unknown constructor {v!r}", self.text, pos)
        self.i += 1
        self.expect("(")
        if v in INT_OPS:
            args: list = [self.integer()]
            for _ in range(INT_OPS[v] - 1):
                self.expect(",")
                args.append(self.integer())
        elif v in LIST_OPS:
            args = [self.item()]
            while self.peek()[1] == ",":
                self.i += 1
                args.append(self.item())
        else:
            args = [self.expr()]
            self.expect(",")
            args.append(self.expr())
            while self.peek()[1] == ",":
                self.i += 1
                args.append(self.expr())
        self.expect(")")
        return Node(v, tuple(args))

    def item(self) -> Node | int:
        if self.peek()[0] == "int":
            return self.integer()
        return self.expr()


def parse_expr(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    kind, v, pos = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected trailing {v!r}", text, pos)
    return node


def pretty(node: Node | int) -> str:
    return str(node)


def build(node: Node | int) -> P.Poset:
    """Evaluate an expression tree to a poset."""
    if isinstance(node, int):
        return _need(P.antichain, node, "antichain", 1)
    op, args = node.op, node.args
    if op == "chain":
        return _need(P.chain, args[0], op, 1)
    if op == "antichain":
        return _need(P.antichain, args[0], op, 1)
    if op == "divisor":
        _divisor_bound(args[0])
        return _need(P.divisor_poset, args[0], op, 2)
    if op == "diamonds":
        n, m = args
        if n < 3 or n % 2 == 0:
            raise ExprSemanticError(f"diamonds: number of summands must be odd and >= 3, got {n}")
        if m < 2:
            raise ExprSemanticError(f"diamonds: antichain size must be >= 2, got {m}")
        return P.stacked_diamond(n, m)
    if op in LIST_OPS:
        if all(isinstance(a, int) for a in args) and op == "osum":
            for a in args:
                if a < 1:
                    raise ExprSemanticError(f"osum: layer size must be >= 1, got {a}")
            return P.ordinal_sum_of_antichains(list(args))
        parts = [build(a) for a in args]
        return P.ordinal_sum(parts) if op == "osum" else P.disjoint_union(parts)
    parts = [build(a) for a in args]
    out = parts[0]
    for q in parts[1:]:
        out = P.product(out, q)
    return out


def _need(fn, value: int, op: str, low: int) -> P.Poset:
    if value < low:
        raise ExprSemanticError(f"{op}: argument must be >= {low}, got {value}")
    return fn(value)


MAX_DIVISOR_ARG = 10 ** 12


def _divisor_bound(d: int) -> None:
    if d > MAX_DIVISOR_ARG:
        raise ExprSemanticError(f"divisor: argument must be <= {MAX_DIVISOR_ARG}, got {d}")


def size_of(node: Node | int) -> int:
    """Element count without building the poset, for size caps."""
    if isinstance(node, int):
        return node
    op, args = node.op, node.args
    if op in ("chain", "antichain"):
        return args[0]
    if op == "divisor":
        _divisor_bound(args[0])
        count = 1
        for _, e in P._factorize(args[0]):
            count *= e + 1
        return count
    if op == "diamonds":
        n, m = args
        return (n + 1) // 2 + (n - 1) // 2 * m
    if op in LIST_OPS:
        return sum(size_of(a) for a in args)
    out = 1
    for a in args:
        out *= size_of(a)
    return out


def parse_poset(text: str) -> P.Poset:
    return build(parse_expr(text))
