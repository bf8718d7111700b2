from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtuples.gaussian import I, ONE, ZERO, GaussianRational, format_gaussian
from dtuples.parsing import parse_bipoly

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
gaussians = st.builds(GaussianRational, fractions, fractions)


def test_normalized_fractions():
    z = GaussianRational(Fraction(2, -4), Fraction(6, 9))
    assert z.re == Fraction(-1, 2) and z.re.denominator == 2
    assert z.im == Fraction(2, 3)


def test_i_squared():
    assert I * I == -1
    assert I ** 4 == ONE
    assert I ** -1 == -I


def test_mixed_operands():
    z = GaussianRational(1, 2)
    assert z + 1 == GaussianRational(2, 2)
    assert 1 - z == GaussianRational(0, -2)
    assert Fraction(1, 2) * z == GaussianRational(Fraction(1, 2), 1)
    assert 1 / I == -I


def test_abs_square_exact():
    assert GaussianRational(Fraction(1, 2), Fraction(1, 3)).abs_square() == Fraction(13, 36)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1, 1) / ZERO


def test_immutable():
    z = GaussianRational(1)
    with pytest.raises(AttributeError):
        z.re = Fraction(2)


def test_hash_agrees_with_equality():
    assert hash(GaussianRational(3)) == hash(3)
    assert len({GaussianRational(1, 1), GaussianRational(Fraction(2, 2), 1)}) == 1


def test_coerce_rejects_float():
    with pytest.raises(TypeError):
        GaussianRational.coerce(0.5)


@pytest.mark.parametrize(
    "z, text",
    [
        (GaussianRational(3), "3"),
        (GaussianRational(0, -1), "-i"),
        (GaussianRational(9, -1), "9-i"),
        (GaussianRational(1, 6), "1+6*i"),
        (GaussianRational(Fraction(1, 2), Fraction(3, 4)), "1/2+3/4*i"),
        (GaussianRational(0, 0), "0"),
    ],
)
def test_format(z, text):
    assert format_gaussian(z) == text


@given(gaussians)
def test_format_parses_back(z):
    assert parse_bipoly(format_gaussian(z)).coeff(0, 0) == z


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * b).abs_square() == a.abs_square() * b.abs_square()
    if not b.is_zero():
        assert (a / b) * b == a


@given(gaussians)
def test_complex_conversion(z):
    w = complex(z)
    assert w.real == pytest.approx(float(z.re)) and w.imag == pytest.approx(float(z.im))
