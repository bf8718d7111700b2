"""Recursive-descent parser for polynomial and fractional-map expressions.

Grammar (explicit ``*`` required, exponents are integer literals)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := 'x' | 'y' | 'i' | number | '(' expr ')'
    number := uint | uint '/' uint

A fractional map is ``expr`` or ``expr '/' expr`` in a single variable.
Expressions are expanded exactly while parsing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .correspondence import Correspondence, FractionalMap
from .errors import DegreeOverflow, PolySyntaxError, UnsupportedCoefficient, ValidationError
from .gaussian import GaussianRational
from .poly import BiPoly, UniPoly

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<dec>\d+\.\d*|\.\d+)
  | (?P<num>\d+(?:/\d+(?![\d.]))?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()/])
    """,
    re.VERBOSE,
)

_IRRATIONAL_NAMES = {"sqrt", "pi", "e", "exp", "log", "ln", "sin", "cos", "tan"}

_MAX_EXPONENT = 64


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    text = text.replace("−", "-")
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tok = m.group()
        if kind == "dec":
            raise UnsupportedCoefficient(
                f"decimal literal {tok!r} at position {pos}; write exact rationals as p/q"
            )
        if kind == "name":
            if tok in ("x", "y", "i"):
                kind = tok
            elif tok in _IRRATIONAL_NAMES:
                raise UnsupportedCoefficient(
                    f"{tok!r} at position {pos}: only Gaussian-rational coefficients are supported"
                )
            else:
                raise PolySyntaxError(f"unknown symbol {tok!r}", text, pos)
        elif kind == "op":
            kind = tok
        if kind != "ws":
            out.append(Token(kind, tok, pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, allow_div: bool = False):
        self.text = text
        self.tokens = tokenize(text)
        self.k = 0
        self.allow_div = allow_div

    @property
    def tok(self) -> Token:
        return self.tokens[self.k]

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        shown = tok.text or "end of input"
        raise PolySyntaxError(f"{msg}, found {shown!r}", self.text, tok.pos)

    def take(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.error(f"expected {kind!r}")
        t = self.tok
        self.k += 1
        return t

    def parse_top(self) -> tuple[BiPoly, Optional[BiPoly]]:
        num = self.expr()
        den = None
        if self.allow_div and self.tok.kind == "/":
            self.k += 1
            den = self.expr()
        if self.tok.kind != "end":
            self.error("unexpected token")
        return num, den

    def expr(self) -> BiPoly:
        neg = False
        if self.tok.kind == "-":
            neg = True
            self.k += 1
        acc = self.term()
        if neg:
            acc = -acc
        while self.tok.kind in ("+", "-"):
            op = self.tok.kind
            self.k += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> BiPoly:
        acc = self.factor()
        while self.tok.kind == "*":
            self.k += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> BiPoly:
        base = self.base()
        if self.tok.kind == "^":
            self.k += 1
            t = self.tok
            if t.kind != "num" or "/" in t.text:
                self.error("exponent must be a nonnegative integer literal")
            self.k += 1
            n = int(t.text)
            if n > _MAX_EXPONENT:
                self.error(f"exponent larger than {_MAX_EXPONENT}", t)
            base = base ** n
        return base

    def base(self) -> BiPoly:
        t = self.tok
        if t.kind == "x":
            self.k += 1
            return BiPoly.from_terms({(1, 0): 1})
        if t.kind == "y":
            self.k += 1
            return BiPoly.from_terms({(0, 1): 1})
        if t.kind == "i":
            self.k += 1
            return BiPoly.constant(GaussianRational(0, 1))
        if t.kind == "num":
            self.k += 1
            q = Fraction(t.text)
            return BiPoly.constant(q) if q else BiPoly()
        if t.kind == "(":
            self.k += 1
            inner = self.expr()
            self.take(")")
            return inner
        self.error("expected x, y, i, a number or '('")


def parse_bipoly(text: str) -> BiPoly:
    num, _ = _Parser(text).parse_top()
    return num


def parse_polynomial(text: str) -> Correspondence:
    """Parse and expand ``text`` into a validated correspondence."""
    return Correspondence.from_poly(parse_bipoly(text))


def _univariate(p: BiPoly, text: str) -> tuple[UniPoly, Optional[str]]:
    uses_x = p.deg_x > 0
    uses_y = p.deg_y > 0
    if uses_x and uses_y:
        raise PolySyntaxError(f"fractional map must use a single variable: {text!r}")
    if uses_y:
        return UniPoly(q.coeff(0) for q in p.ys), "y"
    return (p.ys[0] if p.ys else UniPoly()), ("x" if uses_x else None)


def parse_fractional_map(text: str, d: Optional[int] = None) -> FractionalMap:
    """Parse ``"num / den"`` (or a bare polynomial) into a reduced-form map.

    ``d`` is the declared degree; a larger actual degree raises
    ``DegreeOverflow``. Without ``d`` the degree is ``max(deg num, deg den)``.
    """
    num_b, den_b = _Parser(text, allow_div=True).parse_top()
    num, vn = _univariate(num_b, text)
    den, vd = _univariate(den_b, text) if den_b is not None else (UniPoly.constant(1), None)
    if vn and vd and vn != vd:
        raise PolySyntaxError(f"numerator and denominator use different variables: {text!r}")
    if den.is_zero():
        raise ValidationError("denominator is identically zero")
    actual = max(num.degree, den.degree)
    if d is None:
        d = actual
    elif actual > d:
        raise DegreeOverflow(f"map has degree {actual}, exceeds declared d = {d}")
    return FractionalMap(num, den, d)
