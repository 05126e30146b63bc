"""Small Pratt parser for field expressions such as ``"2*t + x^2"``.

Grammar (ASCII)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          right associative
    atom    := NUMBER | VARIABLE | FUNC '(' expr ')' | '(' expr ')'

Functions: ln, exp, sin, cos, tan, arctan.  The set of admissible variable
names is chosen by the caller (``t`` and ``x`` for fields, ``p`` for
diffusivities).  Evaluation is vectorized through numpy.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import LexError, ParseError

FUNCTIONS = {
    "ln": np.log,
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "arctan": np.arctan,
}

_BINARY_OPS = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.true_divide,
    "^": np.power,
}

# binding powers: ^ > unary minus > * / > + -
_INFIX_BP = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_PREFIX_BP = 30


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: Node


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Call:
    func: str
    arg: Node


Node = Union[Num, Var, Neg, BinOp, Call]


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "lparen", "rparen", "end"
    text: str
    pos: int


_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def tokenize(src: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _BINARY_OPS:
            tokens.append(Token("op", ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append(Token("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(Token("rparen", ch, i))
            i += 1
            continue
        m = _NUMBER.match(src, i)
        if m:
            tokens.append(Token("num", m.group(), i))
            i = m.end()
            continue
        m = _NAME.match(src, i)
        if m:
            tokens.append(Token("name", m.group(), i))
            i = m.end()
            continue
        raise LexError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, variables: tuple[str, ...]):
        self.tokens = tokenize(src)
        self.i = 0
        self.variables = variables

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {_describe(tok)}", tok.pos)
        return self.advance()

    def expression(self, min_bp: int = 0) -> Node:
        left = self.prefix()
        while True:
            tok = self.peek()
            if tok.kind != "op":
                break
            bp = _INFIX_BP[tok.text]
            if bp < min_bp:
                break
            self.advance()
            if tok.text == "^":
                # right operand may carry a unary minus: 2^-x
                right = self.expression(_PREFIX_BP)
            else:
                right = self.expression(bp + 1)
            left = BinOp(tok.text, left, right)
        return left

    def prefix(self) -> Node:
        tok = self.advance()
        if tok.kind == "op" and tok.text == "-":
            return Neg(self.expression(_PREFIX_BP))
        if tok.kind == "num":
            return Num(float(tok.text))
        if tok.kind == "lparen":
            inner = self.expression()
            self.expect("rparen", "')'")
            return inner
        if tok.kind == "name":
            if tok.text in FUNCTIONS:
                self.expect("lparen", f"'(' after {tok.text}")
                arg = self.expression()
                self.expect("rparen", "')'")
                return Call(tok.text, arg)
            if tok.text in self.variables:
                return Var(tok.text)
            allowed = ", ".join(self.variables)
            raise ParseError(f"unknown name {tok.text!r} (variables: {allowed})", tok.pos)
        raise ParseError(f"unexpected {_describe(tok)}", tok.pos)


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "end" else repr(tok.text)


def parse_expression(src: str, variables: tuple[str, ...] = ("t", "x")) -> Node:
    """Parse ``src`` into a syntax tree; raises LexError or ParseError."""
    if not src or not src.strip():
        raise ParseError("empty expression", 0)
    parser = _Parser(src, variables)
    tree = parser.expression()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {_describe(tok)}", tok.pos)
    return tree


def to_source(node: Node) -> str:
    """Fully parenthesized text that parses back to ``node``."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    return f"{node.func}({to_source(node.arg)})"


def evaluate(node: Node, env: dict):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Neg):
        return np.negative(evaluate(node.operand, env))
    if isinstance(node, BinOp):
        return _BINARY_OPS[node.op](evaluate(node.left, env), evaluate(node.right, env))
    return FUNCTIONS[node.func](evaluate(node.arg, env))


def compile_expression(src: str, variables: tuple[str, ...] = ("t", "x")):
    """Return ``(tree, fn)`` where ``fn(*values)`` evaluates the expression."""
    tree = parse_expression(src, variables)

    def fn(*values):
        env = dict(zip(variables, (np.asarray(v, dtype=float) for v in values)))
        with np.errstate(all="ignore"):
            return np.asarray(evaluate(tree, env), dtype=float) + np.zeros(np.broadcast(*env.values()).shape)

    return tree, fn
