"""Conversions to sympy, used as an independent algebra oracle in tests."""

import sympy as sp

from dtuples.gaussian import GaussianRational

X, Y = sp.symbols("x y")


def to_sympy_scalar(z: GaussianRational):
    return sp.Rational(z.re.numerator, z.re.denominator) + sp.I * sp.Rational(z.im.numerator, z.im.denominator)


def from_sympy_scalar(v) -> GaussianRational:
    re, im = sp.Rational(sp.re(v)), sp.Rational(sp.im(v))
    from fractions import Fraction

    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def bipoly_to_sympy(f):
    return sp.expand(sum(to_sympy_scalar(c) * X**i * Y**j for i, j, c in f.terms()))


def unipoly_to_sympy(p, var=X):
    return sp.expand(sum(to_sympy_scalar(c) * var**k for k, c in enumerate(p.coeffs)))


def matrix_to_sympy(rows):
    return sp.Matrix([[to_sympy_scalar(GaussianRational.coerce(c)) for c in r] for r in rows])


def is_constant_multiple(a, b) -> bool:
    if b == 0:
        return a == 0
    q = sp.cancel(sp.expand(a) / sp.expand(b))
    return not q.free_symbols and q != 0
