"""Minimal expression grammar for user-supplied functions of ``x``.

::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := ("+" | "-") factor | atom ("^" signed)?
    signed := ("+" | "-")* atom
    atom   := number | "x" | ident "(" expr ")" | "(" expr ")"
    ident  := exp | sin | cos | sqrt | abs

A unary sign binds looser than ``^`` so ``-x^2`` is ``-(x^2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

import numpy as np

from ..errors import ExpressionError, UnknownIdentifierError
from .handles import FunctionHandle

FUNCTIONS: dict[str, Callable] = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": np.sqrt,
    "abs": np.abs,
}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


class Token(NamedTuple):
    kind: str  # num | name | op | end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ExpressionError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(Token("end", "", n))
    return tokens


# AST nodes ------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Num, Var, Call, Neg, BinOp]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ExpressionError:
        tok = tok or self.tok
        return ExpressionError(msg, tok.pos, self.text)

    def take(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.take(text):
            got = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, got {got!r}")

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.take("-"):
            return Neg(self.factor())
        if self.take("+"):
            return self.factor()
        base = self.atom()
        if self.take("^"):
            return BinOp("^", base, self.signed())
        return base

    def signed(self) -> Node:
        if self.take("-"):
            return Neg(self.signed())
        if self.take("+"):
            return self.signed()
        return self.atom()

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(float(tok.text))
        if tok.kind == "name":
            self.i += 1
            if tok.text == "x":
                return Var()
            if tok.text not in FUNCTIONS:
                raise UnknownIdentifierError(f"unknown identifier {tok.text!r}", tok.pos, self.text)
            if not (self.tok.kind == "op" and self.tok.text == "("):
                raise self.error(f"expected '(' after {tok.text!r}")
            self.i += 1
            arg = self.expr()
            self.expect(")")
            return Call(tok.text, arg)
        if self.take("("):
            node = self.expr()
            self.expect(")")
            return node
        got = tok.text or "end of input"
        raise self.error(f"unexpected {got!r}")


def parse_tree(text: str) -> Node:
    return _Parser(text).parse()


def evaluate(node: Node, x):
    if isinstance(node, Num):
        return node.value + 0.0 * x
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -evaluate(node.arg, x)
    if isinstance(node, Call):
        return FUNCTIONS[node.fn](evaluate(node.arg, x))
    a = evaluate(node.left, x)
    b = evaluate(node.right, x)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        return np.divide(a, b)
    return np.power(a, b)


def parse_expression(text: str) -> FunctionHandle:
    """Parse ``text`` into a FunctionHandle evaluating it at any real ``x``.

    >>> parse_expression("x^3")(2.0)
    8.0
    """
    tree = parse_tree(text)

    def fn(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = evaluate(tree, x)
        return out[()] if np.ndim(out) == 0 else out

    return FunctionHandle(fn, name=text.strip())
