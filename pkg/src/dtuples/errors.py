"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class DTuplesError(Exception):
    """Base class for all errors raised by dtuples."""


# exact algebra

class BothZero(DTuplesError, ValueError):
    pass


class ZeroPolynomial(DTuplesError, ValueError):
    pass


class BadExponent(DTuplesError, ValueError):
    pass


class RankNotTwo(DTuplesError, ValueError):
    def __init__(self, rank: int):
        super().__init__(f"coefficient matrix has rank {rank}, expected 2")
        self.rank = rank


# correspondence validation

class ValidationError(DTuplesError, ValueError):
    """Input does not describe a valid correspondence or fractional map."""


class ZeroMatrix(ValidationError):
    pass


class DegenerateDegree(ValidationError):
    pass


class LineComponent(ValidationError):
    pass


class DegreeMismatch(ValidationError):
    pass


class SingularMobius(ValidationError):
    pass


class InternalNonreduced(DTuplesError, RuntimeError):
    """A factorization came out non-reduced; validation should have prevented it."""


# numeric oracle

class NumericallyZeroPolynomial(DTuplesError, ValueError):
    pass


class DegenerateFiber(DTuplesError, ValueError):
    pass


class DegenerateSample(DTuplesError, ValueError):
    pass


class TooManyDegenerateSamples(DTuplesError, RuntimeError):
    pass


class LengthMismatch(DTuplesError, ValueError):
    pass


# input parsing

class PolySyntaxError(DTuplesError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int = -1):
        self.text = text
        self.pos = pos
        if pos >= 0 and text:
            message = f"{message} at position {pos}\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


class UnsupportedCoefficient(DTuplesError, ValueError):
    pass


class DegreeOverflow(DTuplesError, ValueError):
    pass
