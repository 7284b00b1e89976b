"""Parser and evaluator for closed-form holomorphic data in one variable z.

Grammar (recursive descent):

    expr    := term (('+'|'-') term)*
    term    := unary (('*'|'/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          (right associative)
    atom    := NUMBER | 'i' | 'z' | 'exp' '(' expr ')' | 'log' '(' expr ')'
             | 'sqrt' '(' expr ')' | '(' expr ')'

Exponents of '^' must reduce to an exact rational constant; anything else is
rejected at parse time.  Expressions evaluate numerically (numpy-aware) and
expand into fractional Laurent series around a finite point or around
infinity in the chart w = 1/z.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .series import (DEFAULT_TRUNCATION, FractionalLaurentSeries, SeriesError)


class ExprError(ValueError):
    pass


INFINITY = "inf"  # sentinel for the point at infinity

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_]+)|([()+\-*/^]))")


# -- AST ------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '/'
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: Fraction


@dataclass(frozen=True)
class Func:
    name: str  # 'exp' or 'log'
    arg: "Node"


Node = Union[Num, ImagUnit, Var, Neg, BinOp, Pow, Func]


# -- tokenizer / parser ---------------------------------------------------

def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExprError(f"unexpected character at {text[pos:pos+8]!r}")
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("sym", sym))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, text=None):
        tok = self.take()
        if tok[0] != kind or (text is not None and tok[1] != text):
            raise ExprError(f"expected {text or kind}, got {tok[1]!r}")
        return tok

    def expr(self) -> Node:
        node = self.term()
        while self.peek() == ("sym", "+") or self.peek() == ("sym", "-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek() == ("sym", "*") or self.peek() == ("sym", "/"):
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek() == ("sym", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            exp_node = self.unary()
            exponent = _constant_rational(exp_node)
            if base == Var() and exponent.denominator != 1:
                # z^(p/q) has no single-valued closed form away from cuts;
                # keep it, expansion handles it with the principal branch
                pass
            return Pow(base, exponent)
        return base

    def atom(self) -> Node:
        kind, text = self.take()
        if kind == "num":
            if "." in text:
                fr = Fraction(text)
            else:
                fr = Fraction(int(text))
            return Num(fr)
        if kind == "name":
            if text == "i":
                return ImagUnit()
            if text == "z":
                return Var()
            if text in ("exp", "log", "sqrt"):
                self.expect("sym", "(")
                arg = self.expr()
                self.expect("sym", ")")
                if text == "sqrt":
                    return Pow(arg, Fraction(1, 2))
                return Func(text, arg)
            raise ExprError(f"unknown name {text!r}")
        if (kind, text) == ("sym", "("):
            node = self.expr()
            self.expect("sym", ")")
            return node
        raise ExprError(f"unexpected token {text!r}")


def _constant_rational(node: Node) -> Fraction:
    """Fold a constant subtree to an exact rational, or reject."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        return -_constant_rational(node.arg)
    if isinstance(node, BinOp):
        a = _constant_rational(node.left)
        b = _constant_rational(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if b == 0:
                raise ExprError("division by zero in exponent")
            return a / b
    if isinstance(node, Pow):
        base = _constant_rational(node.base)
        if node.exponent.denominator == 1:
            return base ** int(node.exponent)
    raise ExprError("exponent must be an exact rational constant")


def parse(text: str) -> Node:
    p = _Parser(_tokenize(text))
    node = p.expr()
    p.expect("end")
    return node


# -- numeric evaluation ---------------------------------------------------

def evaluate(node: Node, z):
    """Evaluate at complex z (scalar or ndarray), principal branches."""
    z = np.asarray(z, dtype=complex)
    if isinstance(node, Num):
        return np.full_like(z, complex(node.value))
    if isinstance(node, ImagUnit):
        return np.full_like(z, 1j)
    if isinstance(node, Var):
        return z
    if isinstance(node, Neg):
        return -evaluate(node.arg, z)
    if isinstance(node, BinOp):
        a = evaluate(node.left, z)
        b = evaluate(node.right, z)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a / b
    if isinstance(node, Pow):
        base = evaluate(node.base, z)
        if node.exponent.denominator == 1:
            return base ** int(node.exponent)
        return np.exp(float(node.exponent) * np.log(base))
    if isinstance(node, Func):
        arg = evaluate(node.arg, z)
        return np.exp(arg) if node.name == "exp" else np.log(arg)
    raise ExprError(f"cannot evaluate node {node!r}")


def differentiate(node: Node) -> Node:
    """Symbolic d/dz on the AST."""
    zero = Num(Fraction(0))
    if isinstance(node, (Num, ImagUnit)):
        return zero
    if isinstance(node, Var):
        return Num(Fraction(1))
    if isinstance(node, Neg):
        return Neg(differentiate(node.arg))
    if isinstance(node, BinOp):
        da = differentiate(node.left)
        db = differentiate(node.right)
        if node.op in ("+", "-"):
            return BinOp(node.op, da, db)
        if node.op == "*":
            return BinOp("+", BinOp("*", da, node.right),
                         BinOp("*", node.left, db))
        # quotient rule
        num = BinOp("-", BinOp("*", da, node.right),
                    BinOp("*", node.left, db))
        return BinOp("/", num, Pow(node.right, Fraction(2)))
    if isinstance(node, Pow):
        e = node.exponent
        if e == 0:
            return zero
        inner = differentiate(node.base)
        scaled = BinOp("*", Num(e), Pow(node.base, e - 1))
        return BinOp("*", scaled, inner)
    if isinstance(node, Func):
        inner = differentiate(node.arg)
        if node.name == "exp":
            return BinOp("*", node, inner)
        return BinOp("/", inner, node.arg)
    raise ExprError(f"cannot differentiate node {node!r}")


# -- series expansion -----------------------------------------------------

def expand_at(node: Node, point, truncation: int = DEFAULT_TRUNCATION
              ) -> FractionalLaurentSeries:
    """Fractional Laurent expansion in the local parameter w, where
    z = point + w at a finite point and z = 1/w at INFINITY.

    Raises ExprError for essential singularities (exp of a pole) and for
    log with unresolvable monodromy.
    """
    if point == INFINITY:
        var = FractionalLaurentSeries.monomial(1.0, -1, truncation)
    else:
        a = complex(point)
        var = FractionalLaurentSeries.make(
            0, [a, 1.0] + [0.0] * (truncation - 1))
    return _expand(node, var)


def _expand(node: Node, var: FractionalLaurentSeries) -> FractionalLaurentSeries:
    n = var.truncation
    if isinstance(node, Num):
        return FractionalLaurentSeries.constant(complex(node.value), n)
    if isinstance(node, ImagUnit):
        return FractionalLaurentSeries.constant(1j, n)
    if isinstance(node, Var):
        return var
    if isinstance(node, Neg):
        return -_expand(node.arg, var)
    if isinstance(node, BinOp):
        a = _expand(node.left, var)
        b = _expand(node.right, var)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a / b
    if isinstance(node, Pow):
        base = _expand(node.base, var)
        try:
            return base.pow_rational(node.exponent)
        except SeriesError as e:
            raise ExprError(str(e)) from e
    if isinstance(node, Func):
        arg = _expand(node.arg, var)
        try:
            if node.name == "exp":
                return arg.exp()
            return arg.log()
        except SeriesError as e:
            raise ExprError(str(e)) from e
    raise ExprError(f"cannot expand node {node!r}")


# -- convenience wrapper --------------------------------------------------

class Expression:
    """A parsed closed-form function of z with numeric and series views."""

    def __init__(self, source: Union[str, Node]):
        if isinstance(source, str):
            self.source: Optional[str] = source
            self.ast = parse(source)
        else:
            self.source = None
            self.ast = source

    def __call__(self, z):
        return evaluate(self.ast, z)

    def derivative(self) -> "Expression":
        return Expression(differentiate(self.ast))

    def series_at(self, point, truncation: int = DEFAULT_TRUNCATION
                  ) -> FractionalLaurentSeries:
        return expand_at(self.ast, point, truncation)

    def __repr__(self):
        return f"Expression({self.source!r})" if self.source else \
            f"Expression(<ast>)"
