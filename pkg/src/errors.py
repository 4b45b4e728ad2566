"""Exception hierarchy for the Fermat equation engine."""

from typing import Any, Iterable, Optional


class FermatError(Exception):
    """Base class for every error raised by the engine."""


class DivisionByZero(FermatError, ZeroDivisionError):
    """Exact division by a zero number, polynomial or rational function."""


class PoleAtSamplePoint(FermatError, ArithmeticError):
    """A sample point lies on (or numerically next to) a pole."""

    def __init__(self, z: complex, message: Optional[str] = None):
        self.z = z
        super().__init__(message or f"pole at sample point {z!r}")


class OverflowAtSamplePoint(FermatError, OverflowError):
    """An exponent is too large in modulus to evaluate in double precision."""

    def __init__(self, z: complex, exponent: complex):
        self.z = z
        self.exponent = exponent
        super().__init__(f"exponent {exponent!r} overflows at {z!r}")


class LexError(FermatError, ValueError):
    """Unknown character in an expression."""

    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"unexpected character {char!r} at offset {position}")


class ParseError(FermatError, ValueError):
    """Token stream does not match the grammar."""

    def __init__(self, position: int, expected: Iterable[str], message: Optional[str] = None):
        self.position = position
        self.expected = tuple(sorted(expected))
        super().__init__(
            message or f"parse error at offset {position}: expected one of {', '.join(self.expected)}"
        )


class NonPolynomialExponent(ParseError):
    """The argument of exp() is not a polynomial in z."""

    def __init__(self, position: int, message: str = "argument of exp() must be a polynomial"):
        super().__init__(position, ("polynomial",), f"{message} (offset {position})")


class PreconditionViolated(FermatError, ValueError):
    """An operation was called outside its domain."""


class ConstraintViolation(FermatError, ValueError):
    """A numeric binding does not satisfy its constraint polynomial."""

    def __init__(self, name: str, value: complex, residual: float):
        self.name = name
        self.value = value
        self.residual = residual
        super().__init__(f"binding {name}={value!r} violates its constraint (|p(x)|={residual:.3e})")


class AllPointsRejected(FermatError, RuntimeError):
    """Pole avoidance exhausted the draw budget."""


class DegenerateDifference(FermatError, ValueError):
    """Q - R1^m vanishes identically, so the degree balance is vacuous."""


class NotMonomialPair(FermatError, ValueError):
    """R f^(k) +/- i f is not a single exponential term."""


class ProductIdentityFailed(FermatError, ValueError):
    """Monomial pair found, but u*v differs from Q e^alpha."""


class ZeroBase(FermatError, ValueError):
    """Roots of zero were requested."""


class SideConditionFailed(FermatError, ValueError):
    """A family side condition does not hold for the supplied data."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        super().__init__(f"side condition '{condition}' failed" + (f": {detail}" if detail else ""))


class VerificationFailed(FermatError, RuntimeError):
    """A constructed candidate was refuted by the verifier."""

    def __init__(self, family: str, report: Any):
        self.family = family
        self.report = report
        super().__init__(f"{family} candidate refuted by the verifier")


class FamilyUnavailable(FermatError):
    """The requested family has no member for the given parameters."""


class NoSolutionInFamily(FamilyUnavailable):
    """The defining constraint is unsatisfiable."""


class FamilyDegenerate(FamilyUnavailable):
    """The family formula degenerates (vanishing denominator or f = 0)."""


class EmptyFamily(FamilyUnavailable):
    """Every root choice was discarded."""
