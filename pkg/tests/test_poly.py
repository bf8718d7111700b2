import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from dtuples.errors import BadExponent, BothZero, ZeroPolynomial
from dtuples.gaussian import GaussianRational
from dtuples.parsing import parse_bipoly
from dtuples.poly import (
    BiPoly,
    UniPoly,
    bipoly_content_y,
    bipoly_exact_div,
    bipoly_gcd_y,
    perfect_power_extract,
    squarefree_decomposition,
    unipoly_gcd,
)

from gen import gaussian
from symref import X, Y, bipoly_to_sympy, is_constant_multiple, unipoly_to_sympy


def P(text: str) -> BiPoly:
    return parse_bipoly(text)


def U(*coeffs) -> UniPoly:
    return UniPoly(coeffs)


small_ints = st.integers(-4, 4)
unipolys = st.lists(small_ints, min_size=0, max_size=5).map(lambda cs: UniPoly(cs))


# -- univariate ----------------------------------------------------------------------


def test_zero_polynomial_conventions():
    z = UniPoly([0, 0])
    assert z.coeffs == () and z.degree == -1 and z.is_zero()
    assert U(1, 2, 0, 0).degree == 1


def test_divmod_reconstructs():
    p, q = U(1, 2, 3, 4), U(1, 1)
    quo, rem = divmod(p, q)
    assert quo * q + rem == p and rem.degree < q.degree
    assert p.exact_div(q) is None
    assert (p * q).exact_div(q) == p


def test_derivative_and_monic():
    assert U(5, 3, 2).derivative() == U(3, 4)
    assert U(2, 4).monic() == U(Fraction(1, 2), 1)


def test_exact_evaluation():
    assert U(1, 0, 1)(GaussianRational(0, 1)).is_zero()
    assert U(-16, -20, 2, 2)(-1) == 4


@pytest.mark.parametrize(
    "p, q, expected",
    [
        (U(-1, 0, 1), U(-1, 1), U(-1, 1)),
        (U(1, 0, 1), U(1, 1), U(1)),
        (U(-6, 11, -6, 1), U(-6, 11, -6, 1).derivative(), U(1)),
    ],
)
def test_unipoly_gcd_examples(p, q, expected):
    assert unipoly_gcd(p, q) == expected


def test_unipoly_gcd_both_zero():
    with pytest.raises(BothZero):
        unipoly_gcd(UniPoly(), UniPoly())


def test_unipoly_gcd_with_zero_is_monic_other():
    assert unipoly_gcd(U(2, 4), UniPoly()) == U(Fraction(1, 2), 1)


@given(unipolys, unipolys, unipolys)
def test_unipoly_gcd_divides_and_is_greatest(a, b, c):
    p, q = a * c, b * c
    if p.is_zero() and q.is_zero():
        return
    g = unipoly_gcd(p, q)
    assert g.coeffs[-1] == 1
    assert p.exact_div(g) is not None and q.exact_div(g) is not None
    if not c.is_zero():
        assert g.exact_div(c.monic()) is not None


@given(unipolys, unipolys)
def test_unipoly_gcd_matches_sympy(p, q):
    if p.is_zero() and q.is_zero():
        return
    ref = sp.Poly(sp.gcd(unipoly_to_sympy(p), unipoly_to_sympy(q)), X, domain="QQ").monic()
    assert sp.expand(unipoly_to_sympy(unipoly_gcd(p, q)) - ref.as_expr()) == 0


def test_squarefree_decomposition():
    a, b = U(1, 1), U(-2, 0, 1)
    parts = squarefree_decomposition(a ** 3 * b ** 2 * U(3))
    assert dict((k, f) for f, k in parts) == {3: a, 2: b}


# -- bivariate -----------------------------------------------------------------------


def test_bipoly_matrix_round_trip():
    f = P("(1+6*i)*x^2*y + 3*y^2 - x")
    assert BiPoly.from_matrix(f.to_matrix()) == f
    assert f.coeff(2, 1) == GaussianRational(1, 6)
    assert P(str(f)) == f


def test_bipoly_matches_sympy_expansion():
    f = P("(x*y+x+y+2)^3 - (x-i*y)^2")
    assert sp.expand(bipoly_to_sympy(f) - ((X * Y + X + Y + 2) ** 3 - (X - sp.I * Y) ** 2)) == 0


@pytest.mark.parametrize(
    "text, expected",
    [
        ("(x-1)*(y^2+y+1)", U(-1, 1)),
        ("x*y+1", U(1)),
        (
            "x^3*y^3 + 3*x^3*y^2 + 3*x^3*y + x^3 + 3*x^2*y^3 + 12*x^2*y^2 + 15*x^2*y + 6*x^2"
            " + 3*x*y^3 + 15*x*y^2 + 24*x*y + 12*x + y^3 + 6*y^2 + 12*y + 8",
            U(1),
        ),
        ("(2*x^2-2)*y + (x-1)*(x+3)", U(-1, 1)),
    ],
)
def test_bipoly_content_y(text, expected):
    assert bipoly_content_y(P(text)) == expected


def test_bipoly_content_y_zero():
    with pytest.raises(ZeroPolynomial):
        bipoly_content_y(BiPoly())


def test_bipoly_gcd_y_examples():
    g = P("x*y+x+y+2")
    f = g ** 3
    h = bipoly_gcd_y(f, f.diff_y())
    assert h == (g ** 2).normalized()
    assert bipoly_gcd_y(P("x*y+1"), P("x*y-1")) == P("1")
    assert bipoly_gcd_y(f, f) == f.normalized()


def test_bipoly_gcd_y_zero_operand():
    with pytest.raises(ZeroPolynomial):
        bipoly_gcd_y(BiPoly(), P("x"))


def _random_bipoly(rng, dx, dy):
    return BiPoly.from_terms({(i, j): gaussian(rng, 3) for i in range(dx + 1) for j in range(dy + 1)})


@pytest.mark.parametrize("seed", range(12))
def test_bipoly_gcd_y_matches_sympy(seed):
    rng = random.Random(seed)
    c = _random_bipoly(rng, rng.randint(0, 2), rng.randint(1, 2))
    a = _random_bipoly(rng, rng.randint(0, 2), rng.randint(0, 2))
    b = _random_bipoly(rng, rng.randint(0, 2), rng.randint(0, 2))
    f, g = (a * c).primitive_y(), (b * c).primitive_y()
    ours = bipoly_gcd_y(f, g)
    ref = sp.gcd(bipoly_to_sympy(f), bipoly_to_sympy(g), extension=sp.I)
    assert is_constant_multiple(bipoly_to_sympy(ours), ref)
    assert ours.lex_lc() == 1


def test_exact_division():
    g, h = P("x*y+1"), P("y^2-x")
    assert bipoly_exact_div(g * h, h) == g
    assert bipoly_exact_div(g * h + P("1"), h) is None


# -- perfect powers ------------------------------------------------------------------


EX2A = (
    "x^3*y^3 + 3*x^3*y^2 + 3*x^3*y + x^3 + 3*x^2*y^3 + 12*x^2*y^2 + 15*x^2*y + 6*x^2"
    " + 3*x*y^3 + 15*x*y^2 + 24*x*y + 12*x + y^3 + 6*y^2 + 12*y + 8"
)
EX2B = (
    "x^4*y^4 + 2*x^4*y^2 + x^4 + 2*x^3*y^4 + 4*x^3*y^2 + 2*x^3 + 3*x^2*y^4 + 8*x^2*y^2"
    " + 5*x^2 + 2*x*y^4 + 6*x*y^2 + 4*x + y^4 + 4*y^2 + 4"
)


def test_perfect_power_example_2a():
    c, g = perfect_power_extract(P(EX2A), 3)
    assert c == 1 and g == P("x*y+x+y+2")


def test_perfect_power_example_2b():
    c, g = perfect_power_extract(P(EX2B), 2)
    assert c == 1 and g == P("x^2*y^2+x^2+x*y^2+x+y^2+2")


def test_perfect_power_degree_parity():
    assert perfect_power_extract(P("x*y+1"), 2) is None


def test_perfect_power_bad_exponent():
    with pytest.raises(BadExponent):
        perfect_power_extract(P("x*y+1"), 1)
    with pytest.raises(ZeroPolynomial):
        perfect_power_extract(BiPoly(), 2)


def test_perfect_power_scalar_and_normalization():
    c, g = perfect_power_extract(P("(2*i)*(3*x*y - y + 6)^2"), 2)
    assert g.lex_lc() == 1
    assert (g ** 2).scale(c) == P("(2*i)*(3*x*y - y + 6)^2")


def test_perfect_power_sixth_power_all_divisors():
    g = P("x*y + 2*x - y + 1")
    f = g ** 6
    for m in (2, 3, 6):
        c, base = perfect_power_extract(f, m)
        assert (base ** m).scale(c) == f


def test_not_a_perfect_power():
    f = P("(x*y+1)^2*(x*y+x+2)^2") * P("x*y - 1") * P("x*y - 3")
    assert perfect_power_extract(f, 2) is None
    assert perfect_power_extract(P("(x*y+1)^3*(x*y+2)"), 2) is None


def test_perfect_power_with_x_content():
    f = P("(x-1)^2*(x*y+y+1)^2")
    c, g = perfect_power_extract(f, 2)
    assert (g ** 2).scale(c) == f


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_perfect_power_property(seed, m):
    rng = random.Random(seed)
    g = _random_bipoly(rng, rng.randint(1, 2), rng.randint(1, 2)).primitive_y()
    if g.deg_x < 1 or g.deg_y < 1:
        return
    found = perfect_power_extract(g ** m, m)
    assert found is not None
    c, base = found
    assert (base ** m).scale(c) == g ** m
    assert base.lex_lc() == 1


def _euclid_gcd_degree(p, q):
    while q:
        p, q = q, p % q
    return p.degree


@pytest.mark.parametrize("seed", range(40))
def test_modular_coprimality_shortcut_is_sound(seed):
    from dtuples.poly import _coprime_mod_p

    rng = random.Random(seed)

    def rand(n):
        return UniPoly([gaussian(rng, 4, (1, 2, 3)) for _ in range(n)] + [GaussianRational(rng.randint(1, 3))])

    common = rand(rng.randint(0, 2))
    p, q = rand(rng.randint(1, 3)) * common, rand(rng.randint(1, 3)) * common
    coprime = _euclid_gcd_degree(p, q) == 0
    if _coprime_mod_p(p, q):
        assert coprime
    if common.degree > 0:
        assert not _coprime_mod_p(p, q)
    assert unipoly_gcd(p, q).degree == _euclid_gcd_degree(p, q)


def test_modular_shortcut_declines_when_prime_divides_denominator():
    from dtuples.poly import _P, _coprime_mod_p

    p = UniPoly([GaussianRational(Fraction(1, _P)), GaussianRational(1)])
    assert not _coprime_mod_p(p, UniPoly([GaussianRational(2), GaussianRational(1)]))


@pytest.mark.parametrize("seed", range(15))
def test_power_filter_never_rejects_a_power(seed):
    from dtuples.poly import _certainly_not_power

    import gen

    rng = random.Random(seed)
    f, g = gen.perfect_power(rng, rng.choice([1, 2]), rng.choice([2, 3]))
    assert not _certainly_not_power(f.poly) and not _certainly_not_power(f.poly.swap())


def test_power_filter_rejects_squarefree():
    from dtuples.poly import _certainly_not_power

    assert _certainly_not_power(parse_bipoly("x^2*y^2 + x*y + x^2 + 1"))
    assert not _certainly_not_power(parse_bipoly("x^2 + 1"))
