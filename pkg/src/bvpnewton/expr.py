"""Arithmetic expressions over ``x``, ``y`` and ``yp`` for user-supplied
right-hand sides and exact solutions.

Grammar (EBNF)::

    expr    = operand { binop operand } ;          (* precedence climbing *)
    operand = "-" operand_at_unary_level | primary ;
    primary = number | variable | func "(" expr ")" | "(" expr ")" ;
    binop   = "+" | "-" | "*" | "/" | "^" ;
    func    = "sin" | "cos" | "exp" | "log" | "sqrt" | "abs" ;

Binding, loosest first: ``+ -`` (left), ``* /`` (left), unary ``-``, ``^``
(right).  So ``-2^2 == -4`` and ``2^3^2 == 512``.  There is no implicit
multiplication: ``2x`` is an error, write ``2*x``.

Evaluation is NumPy-aware, so a parsed right-hand side can be applied to a
whole mesh at once.
"""

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, ParseError

VARIABLES = ("x", "y", "yp")
FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "abs")

# binary operator -> (precedence, right associative)
_BINARY = {"+": (1, False), "-": (1, False), "*": (2, False), "/": (2, False), "^": (4, True)}
_UNARY_PREC = 3


@dataclass(frozen=True)
class Number:
    value: float

    def __str__(self):
        return format(self.value, "g")


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Unary:
    op: str
    child: "Expr"

    def __str__(self):
        return f"(-{self.child})"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"

    def __str__(self):
        return f"{self.fn}({self.arg})"


Expr = Union[Number, Variable, Unary, Binary, Call]


@dataclass(frozen=True)
class Env:
    x: float
    y: float = 0.0
    yp: float = 0.0


_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def tokenize(source):
    toks = []
    pos = 0
    n = len(source)
    while pos < n:
        if source[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(source, pos)
        if m is None or m.lastgroup is None:
            raise ParseError(f"unexpected character {source[pos]!r}", pos, source)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, source, variables):
        self.source = source
        self.variables = variables
        self.toks = tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.pos, self.source)

    def expect(self, text):
        if self.tok.kind != "op" or self.tok.text != text:
            self.fail(f"expected {text!r}")
        return self.advance()

    def parse(self):
        tree = self.expression(0)
        if self.tok.kind != "end":
            self.fail("expected an operator or end of input")
        return tree

    def expression(self, min_prec):
        lhs = self.operand()
        while self.tok.kind == "op" and self.tok.text in _BINARY:
            prec, right = _BINARY[self.tok.text]
            if prec < min_prec:
                break
            op = self.advance().text
            rhs = self.expression(prec if right else prec + 1)
            lhs = Binary(op, lhs, rhs)
        return lhs

    def operand(self):
        tok = self.tok
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Unary("-", self.expression(_UNARY_PREC))
        if tok.kind == "num":
            self.advance()
            return Number(float(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expression(0)
                self.expect(")")
                return Call(tok.text, arg)
            if tok.text in self.variables:
                return Variable(tok.text)
            allowed = ", ".join(self.variables + FUNCTIONS)
            raise ParseError(f"unknown identifier {tok.text!r} (allowed: {allowed})",
                             tok.pos, self.source)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.expression(0)
            self.expect(")")
            return inner
        self.fail("expected a number, variable, function or '('")


def parse(source, variables=VARIABLES):
    """Parse ``source`` into an expression tree.

    ``variables`` restricts which identifiers may appear (exact solutions
    are parsed with ``("x",)``).
    """
    if not source or not source.strip():
        raise ParseError("empty expression", 0, source or "")
    return _Parser(source, tuple(variables)).parse()


def _check(value, node, what="result is not finite"):
    if not np.all(np.isfinite(value)):
        raise DomainError(f"{what} in {node}", str(node))
    return value


def _eval(node, env):
    if isinstance(node, Number):
        return node.value
    if isinstance(node, Variable):
        return env[node.name]
    if isinstance(node, Unary):
        return -_eval(node.child, env)
    if isinstance(node, Binary):
        a = _eval(node.left, env)
        b = _eval(node.right, env)
        op = node.op
        if op == "+":
            return _check(a + b, node)
        if op == "-":
            return _check(a - b, node)
        if op == "*":
            return _check(a * b, node)
        if op == "/":
            if np.any(np.asarray(b) == 0):
                raise DomainError(f"division by zero in {node}", str(node))
            return _check(np.divide(a, b), node)
        return _check(np.power(np.asarray(a, dtype=float), b), node)
    if isinstance(node, Call):
        v = _eval(node.arg, env)
        fn = node.fn
        if fn == "log" and np.any(np.asarray(v) <= 0):
            raise DomainError(f"log of non-positive argument in {node}", str(node))
        if fn == "sqrt" and np.any(np.asarray(v) < 0):
            raise DomainError(f"sqrt of negative argument in {node}", str(node))
        return _check(getattr(np, fn)(v), node)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(e, env):
    """Evaluate ``e`` at ``env`` (an :class:`Env` or a mapping of variable values).

    Values may be floats or broadcastable arrays; a float comes back for
    scalar input.
    """
    if isinstance(env, Env):
        env = {"x": env.x, "y": env.y, "yp": env.yp}
    for name, v in env.items():
        if not np.all(np.isfinite(v)):
            raise DomainError(f"variable {name} is not finite", name)
    with np.errstate(all="ignore"):
        out = _eval(e, env)
    return float(out) if np.ndim(out) == 0 else np.asarray(out, dtype=float)


def compile_rhs(e):
    """Wrap a tree as a vectorized ``f(x, y, yp)``."""
    return lambda x, y, yp: evaluate(e, {"x": x, "y": y, "yp": yp})


def compile_exact(e):
    return lambda x: evaluate(e, {"x": x})
