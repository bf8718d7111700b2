"""Polynomial correspondences ``f(x, y) = 0`` and the separated form ``Phi(x) = Psi(y)``.

A correspondence of degree ``d`` is stored as its ``(d+1) x (d+1)``
coefficient matrix ``A`` with ``A[i][j]`` the coefficient of ``x^i y^j``.
Everything here is exact; floating point lives in :mod:`dtuples.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import (
    DegenerateDegree,
    DegreeMismatch,
    InternalNonreduced,
    LineComponent,
    RankNotTwo,
    SingularMobius,
    ValidationError,
    ZeroMatrix,
)
from .gaussian import ONE, ZERO, GaussianRational, Scalar
from .linalg import ExactMatrix, rank_exact, row_basis_decompose
from .poly import BiPoly, UniPoly, perfect_power_extract, unipoly_gcd

Matrix = tuple[tuple[GaussianRational, ...], ...]


def _freeze(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return tuple(tuple(GaussianRational.coerce(c) for c in r) for r in rows)


@dataclass(frozen=True)
class Correspondence:
    """A validated degree-``d`` correspondence.

    Construction checks that ``A`` is nonzero, that the ``x^d`` row and the
    ``y^d`` column are both nonzero, and that ``f`` has no factor depending
    on one variable only (no vertical or horizontal line component).
    """

    A: Matrix

    def __post_init__(self):
        A = _freeze(self.A)
        object.__setattr__(self, "A", A)
        n = len(A)
        if n < 2 or any(len(r) != n for r in A):
            raise ValidationError(f"coefficient matrix must be square with side >= 2, got {n} rows")
        if all(c.is_zero() for r in A for c in r):
            raise ZeroMatrix("coefficient matrix is identically zero")
        # a line component is the sharper diagnosis, so it is checked first
        f = self.poly
        cy = f.content_y()
        if cy.degree > 0:
            raise LineComponent(f"f has the factor {cy.to_str('x')} (a line x = const)")
        cx = f.swap().content_y()
        if cx.degree > 0:
            raise LineComponent(f"f has the factor {cx.to_str('y')} (a line y = const)")
        d = n - 1
        if all(c.is_zero() for c in A[d]):
            raise DegenerateDegree(f"no x^{d} terms: not generically {d}-valued in y")
        if all(r[d].is_zero() for r in A):
            raise DegenerateDegree(f"no y^{d} terms: not generically {d}-valued in x")

    @property
    def d(self) -> int:
        return len(self.A) - 1

    @property
    def poly(self) -> BiPoly:
        return BiPoly.from_matrix(self.A)

    @property
    def matrix(self) -> ExactMatrix:
        return ExactMatrix.from_rows(self.A)

    @classmethod
    def from_poly(cls, f: BiPoly) -> Correspondence:
        d = max(f.deg_x, f.deg_y, 1)
        return cls(_freeze(f.to_matrix(d + 1, d + 1)))

    def __str__(self) -> str:
        return str(self.poly)


def new_correspondence(A: Sequence[Sequence[Scalar]]) -> Correspondence:
    return Correspondence(_freeze(A))


@dataclass(frozen=True)
class FractionalMap:
    """Reduced rational map ``num(t) / den(t)`` of exact degree ``d``."""

    num: UniPoly
    den: UniPoly
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValidationError("fractional map degree must be >= 1")
        if self.num.is_zero() and self.den.is_zero():
            raise ValidationError("numerator and denominator are both zero")
        if max(self.num.degree, self.den.degree) != self.d:
            raise DegreeMismatch(
                f"max(deg num, deg den) = {max(self.num.degree, self.den.degree)}, declared d = {self.d}"
            )
        if unipoly_gcd(self.num, self.den).degree > 0:
            raise ValidationError("fractional map is not in reduced form")

    @classmethod
    def from_coeffs(cls, num: Sequence[Scalar], den: Sequence[Scalar], d: int | None = None) -> FractionalMap:
        """Build from ascending coefficient vectors (index = power)."""
        p, q = UniPoly(num), UniPoly(den)
        if d is None:
            d = max(p.degree, q.degree)
        return cls(p, q, d)

    @classmethod
    def from_desc(cls, num: Sequence[Scalar], den: Sequence[Scalar]) -> FractionalMap:
        """Build from vectors written highest power first, as ``(k_d, ..., k_0)``."""
        return cls.from_coeffs(list(reversed(num)), list(reversed(den)), len(num) - 1)

    @property
    def num_coeffs(self) -> tuple[GaussianRational, ...]:
        return self.num.padded(self.d + 1)

    @property
    def den_coeffs(self) -> tuple[GaussianRational, ...]:
        return self.den.padded(self.d + 1)

    def desc(self) -> tuple[tuple[GaussianRational, ...], tuple[GaussianRational, ...]]:
        return tuple(reversed(self.num_coeffs)), tuple(reversed(self.den_coeffs))

    def to_str(self, var: str = "x") -> str:
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"


@dataclass(frozen=True)
class Factorization:
    """``f = 0`` rewritten as ``phi(x) = psi(y)``; ``scalar`` is ``c`` in ``compose = c * f``."""

    phi: FractionalMap
    psi: FractionalMap
    scalar: Optional[GaussianRational] = None


@dataclass(frozen=True)
class Mobius:
    a: GaussianRational
    b: GaussianRational
    c: GaussianRational
    d: GaussianRational

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, GaussianRational.coerce(getattr(self, name)))
        if self.det.is_zero():
            raise SingularMobius("Mobius map has zero determinant")

    @property
    def det(self) -> GaussianRational:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> Mobius:
        return Mobius(self.d, -self.b, -self.c, self.a)


# -- classification results --------------------------------------------------


@dataclass(frozen=True)
class Rank2:
    factorization: Factorization
    d: int

    is_map_of_tuples = True
    kind = "Rank2"


@dataclass(frozen=True)
class PerfectPower:
    m: int
    base: Correspondence
    base_class: "Classification"
    c: GaussianRational

    is_map_of_tuples = True
    kind = "PerfectPower"


@dataclass(frozen=True)
class NotMapOfTuples:
    rank: int

    is_map_of_tuples = False
    kind = "NotMapOfTuples"


Classification = Union[Rank2, PerfectPower, NotMapOfTuples]


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    swap_scalar: Optional[GaussianRational]
    real_up_to_constant: bool
    real_constant: Optional[GaussianRational]
    hermitian_up_to_unimodular: Optional[GaussianRational]
    notes: tuple[str, ...] = field(default=())


# -- operations ----------------------------------------------------------------


def factorize(f: Correspondence) -> Factorization:
    """Separate the variables of a rank-2 correspondence.

    With ``R_a, R_b`` the first two independent rows and
    ``R_i = sigma_i R_a + tau_i R_b``, we get
    ``f = p(x) U(y) + q(x) V(y)`` and hence ``p/q = -V/U``.
    """
    a, b, sigma, tau = row_basis_decompose(f.A)
    d = f.d
    p, q = UniPoly(sigma), UniPoly(tau)
    u, v = UniPoly(f.A[a]), UniPoly(f.A[b])
    if unipoly_gcd(p, q).degree > 0 or unipoly_gcd(u, v).degree > 0:
        raise InternalNonreduced("factorization has a common factor; f has a line component")
    phi = FractionalMap(p, q, d)
    psi = FractionalMap(-v, u, d)
    back = _outer(phi, psi)
    c = scalar_multiple(back, f.A)
    if c is None or c.is_zero():
        raise InternalNonreduced("factorization does not reproduce f")
    return Factorization(phi, psi, c)


def _outer(phi: FractionalMap, psi: FractionalMap) -> list[list[GaussianRational]]:
    k, l = phi.num_coeffs, phi.den_coeffs
    mu, nu = psi.num_coeffs, psi.den_coeffs
    n = phi.d + 1
    return [[k[i] * nu[j] - l[i] * mu[j] for j in range(n)] for i in range(n)]


def compose(phi: FractionalMap, psi: FractionalMap) -> Correspondence:
    """Coefficient matrix of ``phi(x) = psi(y)``: ``A[i][j] = k_i n_j - l_i m_j``."""
    if phi.d != psi.d:
        raise DegreeMismatch(f"phi has degree {phi.d}, psi has degree {psi.d}")
    return new_correspondence(_outer(phi, psi))


def scalar_multiple(A, B) -> Optional[GaussianRational]:
    """``c`` with ``A = c * B`` entrywise, or ``None``. ``B`` must be nonzero."""
    pairs = [(x, y) for ra, rb in zip(A, B) for x, y in zip(ra, rb)]
    if len(A) != len(B) or any(len(ra) != len(rb) for ra, rb in zip(A, B)):
        return None
    pivot = next(((x, y) for x, y in pairs if not y.is_zero()), None)
    if pivot is None:
        return None
    c = pivot[0] / pivot[1]
    if all(x == c * y for x, y in pairs):
        return c
    return None


def mobius_postcompose(M: Mobius, phi: FractionalMap) -> FractionalMap:
    num = phi.num.scale(M.a) + phi.den.scale(M.b)
    den = phi.num.scale(M.c) + phi.den.scale(M.d)
    return FractionalMap(num, den, phi.d)


def swap_variables(f: Correspondence) -> Correspondence:
    n = len(f.A)
    return Correspondence(tuple(tuple(f.A[j][i] for j in range(n)) for i in range(n)))


def conjugate_coeffs(f: Correspondence) -> Correspondence:
    return Correspondence(tuple(tuple(c.conjugate() for c in r) for r in f.A))


def _divisors_desc(d: int) -> list[int]:
    return [m for m in range(d, 1, -1) if d % m == 0]


def classify(f: Correspondence) -> Classification:
    """Decide whether ``f`` is a map of d-tuples.

    Rank 2 gives a separated factorization directly. Otherwise ``f`` is a
    map of d-tuples only if it is ``c * g^m`` with ``g`` itself a map of
    ``d/m``-tuples; the largest such ``m`` is reported.
    """
    r = rank_exact(f.A)
    if r == 2:
        return Rank2(factorize(f), f.d)
    poly = f.poly
    for m in _divisors_desc(f.d):
        found = perfect_power_extract(poly, m)
        if found is None:
            continue
        c, g = found
        base = Correspondence.from_poly(g)
        sub = classify(base)
        if sub.is_map_of_tuples:
            return PerfectPower(m, base, sub, c)
    return NotMapOfTuples(r)


def _first_nonzero(A: Matrix) -> tuple[int, int]:
    for i, r in enumerate(A):
        for j, c in enumerate(r):
            if not c.is_zero():
                return i, j
    raise ZeroMatrix("coefficient matrix is identically zero")


def symmetry_report(f: Correspondence) -> SymmetryReport:
    A = f.A
    n = len(A)
    At = [[A[j][i] for j in range(n)] for i in range(n)]
    i0, j0 = _first_nonzero(A)
    pivot = A[i0][j0]

    swap = At[i0][j0] / pivot
    if any(At[i][j] != swap * A[i][j] for i in range(n) for j in range(n)):
        swap = None
    symmetric = swap == ONE

    real = all((c / pivot).is_real() for r in A for c in r)

    herm = At[i0][j0].conjugate() / pivot
    if herm.abs_square() != 1 or any(
        At[i][j].conjugate() != herm * A[i][j] for i in range(n) for j in range(n)
    ):
        herm = None

    notes = []
    if swap is not None and swap == -1:
        notes.append("transpose equals -A: zero set is swap-symmetric but the matrix is antisymmetric")
    return SymmetryReport(symmetric, swap, real, pivot if real else None, herm, tuple(notes))


def check_symm_factor_condition(fact: Factorization) -> bool:
    """``k_i n_j + l_j m_i == k_j n_i + l_i m_j`` for all ``i, j``."""
    k, l = fact.phi.num_coeffs, fact.phi.den_coeffs
    mu, nu = fact.psi.num_coeffs, fact.psi.den_coeffs
    if len(k) != len(mu):
        return False
    n = len(k)
    return all(
        k[i] * nu[j] + l[j] * mu[i] == k[j] * nu[i] + l[i] * mu[j]
        for i in range(n)
        for j in range(n)
    )


def check_timerev_factor_condition(fact: Factorization) -> bool:
    """``k_i == conj(m_i)`` and ``l_i == conj(n_i)`` for all ``i``."""
    phi, psi = fact.phi, fact.psi
    if phi.d != psi.d:
        return False
    return all(a == b.conjugate() for a, b in zip(phi.num_coeffs, psi.num_coeffs)) and all(
        a == b.conjugate() for a, b in zip(phi.den_coeffs, psi.den_coeffs)
    )


__all__ = [
    "Classification",
    "Correspondence",
    "Factorization",
    "FractionalMap",
    "Mobius",
    "NotMapOfTuples",
    "PerfectPower",
    "Rank2",
    "SymmetryReport",
    "check_symm_factor_condition",
    "check_timerev_factor_condition",
    "classify",
    "compose",
    "conjugate_coeffs",
    "factorize",
    "mobius_postcompose",
    "new_correspondence",
    "scalar_multiple",
    "swap_variables",
    "symmetry_report",
]
