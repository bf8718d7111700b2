"""The worked examples, transcribed with explicit ``*``, and their expected verdicts.

Each fixture keeps the printed polynomial (or printed matrix, in display
layout) together with any printed pair of maps, so that the exact and
numeric layers can be checked against the same data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .correspondence import (
    Correspondence,
    Factorization,
    PerfectPower,
    Rank2,
    classify,
    compose,
    scalar_multiple,
    symmetry_report,
)
from .gaussian import GaussianRational
from .linalg import rank_exact
from .oracle import DEFAULT_TOL, fiber_y, multiset_match, verify_map_of_tuples
from .parsing import parse_fractional_map, parse_polynomial
from .poly import UniPoly


def _g(z: complex) -> GaussianRational:
    return GaussianRational(int(z.real), int(z.imag))


def _from_display(rows) -> Correspondence:
    d = len(rows) - 1
    return Correspondence([[_g(rows[d - i][d - j]) for j in range(d + 1)] for i in range(d + 1)])


@dataclass(frozen=True)
class Fixture:
    name: str
    title: str
    expr: Optional[str] = None
    display: Optional[tuple] = None
    phi: Optional[str] = None
    psi: Optional[str] = None
    base_expr: Optional[str] = None
    kind: str = "Rank2"
    m: Optional[int] = None
    symmetry: dict = field(default_factory=dict)

    def correspondence(self) -> Correspondence:
        if self.display is not None:
            return _from_display(self.display)
        return parse_polynomial(self.expr)

    def factorization(self) -> Optional[Factorization]:
        if self.phi is None:
            return None
        return Factorization(parse_fractional_map(self.phi), parse_fractional_map(self.psi))


EXAMPLE1 = Fixture(
    name="example1",
    title="rank-2 quintic with complex coefficients",
    expr=(
        "5*x^5*y^5 + 5*x^5*y^4 + 10*x^5*y^3 + 7*x^5*y^2 + (1+6*i)*x^5*y + 11*x^5"
        " + 7*x^4*y^5 + 4*x^4*y^4 + 8*x^4*y^3 + 11*x^4*y^2 + (2+3*i)*x^4*y + 7*x^4"
        " + (9-i)*x^3*y^5 + (3-2*i)*x^3*y^4 + (6-4*i)*x^3*y^3 + (15-i)*x^3*y^2 + 6*x^3*y + (3-5*i)*x^3"
        " + 15*x^2*y^5 + 10*x^2*y^4 + 20*x^2*y^3 + 23*x^2*y^2 + (4+9*i)*x^2*y + 19*x^2"
        " + 16*x*y^5 + 7*x*y^4 + 14*x*y^3 + 26*x*y^2 + (5+3*i)*x*y + 10*x"
        " + 7*y^5 + 9*y^4 + 18*y^3 + 9*y^2 + (1+12*i)*y + 21"
    ),
    display=(
        (5, 5, 10, 7, 1 + 6j, 11),
        (7, 4, 8, 11, 2 + 3j, 7),
        (9 - 1j, 3 - 2j, 6 - 4j, 15 - 1j, 6, 3 - 5j),
        (15, 10, 20, 23, 4 + 9j, 19),
        (16, 7, 14, 26, 5 + 3j, 10),
        (7, 9, 18, 9, 1 + 12j, 21),
    ),
    phi="(x^5 + 2*x^4 + 3*x^3 + 4*x^2 + 5*x + 1) / (2*x^5 + x^4 - i*x^3 + 3*x^2 + x + 4)",
    psi="-(y^5 + 2*y^4 + 4*y^3 + y^2 + 3*i*y + 5) / (3*y^5 + y^4 + 2*y^3 + 5*y^2 + y + 1)",
    symmetry={"symmetric": False, "real_up_to_constant": False, "hermitian_up_to_unimodular": None},
)

EXAMPLE2A = Fixture(
    name="example2a",
    title="cube of a Mobius correspondence",
    expr=(
        "x^3*y^3 + 3*x^3*y^2 + 3*x^3*y + x^3 + 3*x^2*y^3 + 12*x^2*y^2 + 15*x^2*y + 6*x^2"
        " + 3*x*y^3 + 15*x*y^2 + 24*x*y + 12*x + y^3 + 6*y^2 + 12*y + 8"
    ),
    base_expr="x*y + x + y + 2",
    kind="PerfectPower",
    m=3,
    symmetry={"symmetric": True, "real_up_to_constant": True},
)

EXAMPLE2B = Fixture(
    name="example2b",
    title="square of a map of pairs",
    expr=(
        "x^4*y^4 + 2*x^4*y^2 + x^4 + 2*x^3*y^4 + 4*x^3*y^2 + 2*x^3 + 3*x^2*y^4 + 8*x^2*y^2"
        " + 5*x^2 + 2*x*y^4 + 6*x*y^2 + 4*x + y^4 + 4*y^2 + 4"
    ),
    base_expr="x^2*y^2 + x^2 + x*y^2 + x + y^2 + 2",
    kind="PerfectPower",
    m=2,
    symmetry={"symmetric": False, "real_up_to_constant": True},
)

EXAMPLE3 = Fixture(
    name="example3",
    title="symmetric map of triples",
    expr=(
        "3*x^3*y^3 + 10*x^3*y^2 - 51*x^3*y - 26*x^3 + 10*x^2*y^3 - 32*x^2*y^2 + 26*x^2*y - 68*x^2"
        " - 51*x*y^3 + 26*x*y^2 + 279*x*y + 386*x - 26*y^3 - 68*y^2 + 386*y + 220"
    ),
    phi="(x^3 - 6*x^2 + 11*x - 6) / (-x^3 - 8*x^2 + 31*x + 10)",
    psi="(2*y^3 + 2*y^2 - 20*y - 16) / (y^3 + 8*y^2 - 31*y - 10)",
    symmetry={"symmetric": True, "real_up_to_constant": True},
)

EXAMPLE4 = Fixture(
    name="example4",
    title="real map of 4-tuples",
    expr=(
        "3*x^4*y^4 + 16*x^4*y^3 + 9*x^4*y^2 + 8*x^4*y + 20*x^4"
        " + 8*x^3*y^4 + 31*x^3*y^3 + 31*x^3*y^2 + 33*x^3*y + 44*x^3"
        " + 11*x^2*y^4 + 72*x^2*y^3 + 25*x^2*y^2 + 16*x^2*y + 84*x^2"
        " + 5*x*y^4 + 15*x*y^3 + 22*x*y^2 + 25*x*y + 24*x"
        " + 8*y^4 + 51*y^3 + 19*y^2 + 13*y + 60"
    ),
    phi="(2*x^4 + 3*x^3 + 10*x^2 + x + 7) / (x^4 + 5*x^3 + x^2 + 4*x + 1)",
    psi="-(y^4 + 2*y^3 + 5*y^2 + 6*y + 4) / (y^4 + 7*y^3 + 2*y^2 + y + 8)",
    symmetry={"symmetric": False, "real_up_to_constant": True},
)

EXAMPLE5 = Fixture(
    name="example5",
    title="skew-Hermitian map of triples",
    display=(
        (28j, 6j - 25, 19j - 7, -31),
        (25 + 6j, 12j, 17 + 5j, -15 + 4j),
        (7 + 19j, -17 + 5j, 12j, -2j - 28),
        (31, 15 + 4j, 28 - 2j, -20j),
    ),
    phi="(2*i*x^3 + 3*x^2 + (1+i)*x + 5) / (7*x^3 + (3-2*i)*x^2 + 6*x + 2*i)",
    psi="(-2*i*y^3 + 3*y^2 + (1-i)*y + 5) / (7*y^3 + (3+2*i)*y^2 + 6*y - 2*i)",
    symmetry={"symmetric": False, "hermitian_up_to_unimodular": GaussianRational(-1)},
)

FIXTURES: dict[str, Fixture] = {
    fx.name: fx for fx in (EXAMPLE1, EXAMPLE2A, EXAMPLE2B, EXAMPLE3, EXAMPLE4, EXAMPLE5)
}


@dataclass
class FixtureResult:
    name: str
    checks: dict[str, bool]
    notes: list[str]
    worst_mismatch: float
    witness: object = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def run_fixture(
    fx: Fixture, samples: int = 100, tol: float = DEFAULT_TOL, seed: int = 0
) -> FixtureResult:
    """Run every exact and numeric check a fixture supports."""
    f = fx.correspondence()
    checks: dict[str, bool] = {}
    notes: list[str] = []
    if fx.expr is not None and fx.display is not None:
        checks["expression matches matrix"] = parse_polynomial(fx.expr).A == f.A
    cls = classify(f)
    checks["classification"] = cls.kind == fx.kind and (fx.m is None or getattr(cls, "m", None) == fx.m)
    if isinstance(cls, PerfectPower):
        g = parse_polynomial(fx.base_expr).poly
        checks["base"] = scalar_multiple(cls.base.A, Correspondence.from_poly(g).A) is not None
        checks["re-expansion"] = (cls.base.poly ** cls.m).scale(cls.c) == f.poly
    if isinstance(cls, Rank2):
        checks["rank 2"] = rank_exact(f.A) == 2
    rep = symmetry_report(f)
    for key, want in fx.symmetry.items():
        checks[f"symmetry.{key}"] = getattr(rep, key) == want
    fact = fx.factorization()
    if fact is not None:
        c = scalar_multiple(compose(fact.phi, fact.psi).A, f.A)
        checks["printed maps compose"] = c is not None
        if c is not None and c != 1:
            notes.append(f"printed maps compose to {c} times the matrix")
    verdict = verify_map_of_tuples(f, samples, tol, seed)
    checks["oracle"] = verdict.passed
    if fx.name == "example3":
        rep3 = example3_discrepancy()
        checks["x-triple {1,2,3}"] = rep3.x_triple_exact
        checks["printed y-triple flagged"] = rep3.discrepancy_detected
        notes.extend(rep3.lines())
    return FixtureResult(fx.name, checks, notes, verdict.worst.max_mismatch, verdict.worst)


@dataclass(frozen=True)
class Example3Report:
    x_triple_exact: bool
    printed_y_triple: tuple[int, ...]
    psi_numerator_values: tuple[GaussianRational, ...]
    oracle_fiber: tuple[complex, ...]
    fibers_agree: bool
    corrected_vanishes: bool

    @property
    def discrepancy_detected(self) -> bool:
        return any(not v.is_zero() for v in self.psi_numerator_values)

    def lines(self) -> list[str]:
        vals = ", ".join(
            f"{y} -> {v}" for y, v in zip(self.printed_y_triple, self.psi_numerator_values)
        )
        fib = ", ".join(f"{z.real:.6f}{z.imag:+.6f}i" for z in self.oracle_fiber)
        out = [
            f"printed y-triple does not satisfy the printed Psi numerator: {vals}",
            f"computed y-fiber over x in {{1, 2, 3}}: {fib}",
        ]
        if self.corrected_vanishes:
            out.append("with -2*y^2 in place of +2*y^2 the printed triple is exact")
        return out


def example3_discrepancy() -> Example3Report:
    """Check the zero triples of the printed maps of the symmetric cubic example.

    The numerator of Phi is ``(x-1)(x-2)(x-3)``, so the ``x``-triple is right.
    The printed ``y``-triple ``(-1, -2, 4)`` fails the printed Psi numerator;
    the actual fiber over ``x = 1`` is computed numerically and recorded.
    """
    fx = EXAMPLE3
    f = fx.correspondence()
    fact = fx.factorization()
    x = UniPoly([0, 1])
    expected = (x - UniPoly([1])) * (x - UniPoly([2])) * (x - UniPoly([3]))
    x_ok = fact.phi.num.monic() == expected and all(fact.phi.num(k).is_zero() for k in (1, 2, 3))
    triple = (-1, -2, 4)
    values = tuple(fact.psi.num(y) for y in triple)
    fibers = [fiber_y(f, k) for k in (1, 2, 3)]
    agree = all(multiset_match(fibers[0], fb, DEFAULT_TOL)[0] for fb in fibers[1:])
    corrected = UniPoly([-16, -20, -2, 2])
    fixed = all(corrected(y).is_zero() for y in triple)
    return Example3Report(
        x_ok, triple, values, tuple(complex(p) for p in fibers[0]), agree, fixed
    )


__all__ = [
    "EXAMPLE1",
    "EXAMPLE2A",
    "EXAMPLE2B",
    "EXAMPLE3",
    "EXAMPLE4",
    "EXAMPLE5",
    "FIXTURES",
    "Example3Report",
    "Fixture",
    "FixtureResult",
    "example3_discrepancy",
    "run_fixture",
]
