"""Data models for equations, verification reports and classification verdicts."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Mapping, Optional, Tuple

from .algebra import DegreeValue, Poly, RatFun
from .errors import PreconditionViolated
from .exppoly import ExpPoly
from .numeric import NumericExpPoly
from .parser import print_canonical


def _complex_pair(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


@dataclass(frozen=True)
class FermatEquation:
    """Model for f^m + (R f^(k))^n = Q e^alpha."""
    m: int
    n: int
    k: int
    R: RatFun
    Q: RatFun
    alpha: Poly = Poly()

    def __post_init__(self):
        object.__setattr__(self, "R", RatFun.coerce(self.R))
        object.__setattr__(self, "Q", RatFun.coerce(self.Q))
        object.__setattr__(self, "alpha", Poly.coerce(self.alpha))
        for name in ("m", "n", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise PreconditionViolated(f"{name} must be a positive integer, got {value!r}")
        if self.R.is_zero():
            raise PreconditionViolated("R must be a non-zero rational function")
        if self.Q.is_zero():
            raise PreconditionViolated("Q must be a non-zero rational function")

    @property
    def alpha_constant(self) -> bool:
        return self.alpha.is_constant()

    def rhs(self) -> ExpPoly:
        """Q e^alpha as an exponential polynomial."""
        return ExpPoly.term(self.Q, self.alpha)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "R": print_canonical(self.R),
            "Q": print_canonical(self.Q),
            "alpha": print_canonical(self.alpha),
        }


class VerificationMode(Enum):
    EXACT = "exact"
    NUMERIC = "numeric"


class Outcome(Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking a candidate against an equation."""
    mode: VerificationMode
    verdict: Outcome
    residual: Optional[ExpPoly] = None
    max_residual: Optional[float] = None
    sample_points: Tuple[complex, ...] = ()
    tolerance: Optional[float] = None

    @classmethod
    def exact(cls, residual: ExpPoly) -> "VerificationReport":
        verdict = Outcome.VERIFIED if residual.is_zero() else Outcome.REFUTED
        return cls(VerificationMode.EXACT, verdict, residual=residual)

    @classmethod
    def numeric(cls, max_residual: float, samples: List[complex], tolerance: float) -> "VerificationReport":
        verdict = Outcome.VERIFIED if max_residual < tolerance else Outcome.REFUTED
        return cls(
            VerificationMode.NUMERIC,
            verdict,
            max_residual=float(max_residual),
            sample_points=tuple(samples),
            tolerance=tolerance,
        )

    @property
    def verified(self) -> bool:
        return self.verdict is Outcome.VERIFIED

    def summary(self) -> str:
        return f"{self.verdict.value} ({self.mode.value})"

    def to_dict(self) -> dict:
        """Convert to the fixed JSON layout used by the CLI."""
        if self.mode is VerificationMode.EXACT:
            residual = print_canonical(self.residual)
        else:
            residual = self.max_residual
        return {
            "mode": self.mode.value,
            "verdict": self.verdict.value,
            "residual": residual,
            "samples": [_complex_pair(z) for z in self.sample_points],
        }


@dataclass(frozen=True)
class RootConstraint:
    """Polynomial constraint p(x) = 0 on one named constant."""
    name: str
    poly: Poly

    def residual(self, value: complex) -> float:
        return abs(self.poly.eval_complex(value))

    def satisfied_by(self, value: complex, tol: float) -> bool:
        scale = max([1.0] + [abs(c.to_complex()) for c in self.poly.coeffs])
        return self.residual(value) <= tol * scale

    def to_text(self) -> str:
        return f"{print_canonical(self.poly).replace('z', self.name)} = 0"


@dataclass(frozen=True, eq=False)
class NumericCandidate:
    """Solution template together with numeric bindings of its constants."""
    template: str
    builder: Callable[[Mapping[str, complex]], NumericExpPoly]
    bindings: Mapping[str, complex] = field(default_factory=dict)
    constraints: Tuple[RootConstraint, ...] = ()
    alpha: Optional[Tuple[complex, ...]] = None
    exact: Optional[ExpPoly] = None

    def __post_init__(self):
        missing = [c.name for c in self.constraints if c.name not in self.bindings]
        if missing:
            raise PreconditionViolated(f"unbound constants in constraints: {missing}")

    @classmethod
    def from_exact(cls, f: ExpPoly) -> "NumericCandidate":
        numeric = NumericExpPoly.from_exact(f)
        return cls(template=print_canonical(f), builder=lambda _: numeric, exact=f)

    def build(self) -> NumericExpPoly:
        return self.builder(self.bindings)

    def to_dict(self) -> dict:
        return {
            "template": self.template,
            "bindings": {name: _complex_pair(value) for name, value in sorted(self.bindings.items())},
            "constraints": [c.to_text() for c in self.constraints],
            "exact": print_canonical(self.exact) if self.exact is not None else None,
            "alpha": [_complex_pair(c) for c in self.alpha] if self.alpha is not None else None,
        }


@dataclass(frozen=True)
class DegreeBalance:
    """Both sides of m k deg(alpha') = deg(Q - R1^m) - m deg(R R1)."""
    lhs: DegreeValue
    rhs: DegreeValue

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "equal": self.holds}


class FamilyTag(Enum):
    T23_A1 = "T23_A1"
    T23_A2 = "T23_A2"
    T23_B = "T23_B"
    T24_A = "T24_A"
    T24_B = "T24_B"
    T24_C = "T24_C"
    T24_D = "T24_D"
    T24_E = "T24_E"

    @property
    def theorem(self) -> str:
        return "2.3" if self.name.startswith("T23") else "2.4"


@dataclass(frozen=True)
class SideCondition:
    """A named predicate; holds is None when it depends on free parameters."""
    name: str
    holds: Optional[bool] = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass(frozen=True)
class FamilyDescriptor:
    """Model for one solution family emitted by the classifier."""
    tag: FamilyTag
    template: str
    free_parameters: Tuple[Tuple[str, str], ...] = ()
    constraints: Tuple[str, ...] = ()
    side_conditions: Tuple[SideCondition, ...] = ()

    def to_dict(self) -> dict:
        return {
            "tag": self.tag.value,
            "free_parameters": [{"name": n, "domain": d} for n, d in self.free_parameters],
            "constraints": list(self.constraints),
            "side_conditions": [s.to_dict() for s in self.side_conditions],
            "template": self.template,
        }


class VerdictKind(Enum):
    NO_TRANSCENDENTAL_SOLUTION = "NoTranscendentalSolution"
    NO_RATIONAL_SOLUTION = "NoRationalSolution"
    FAMILIES = "Families"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class Verdict:
    """Classification outcome with its supporting annotations."""
    kind: VerdictKind
    reason: str = ""
    theorem: Optional[str] = None
    hypotheses: Tuple[str, ...] = ()
    families: Tuple[FamilyDescriptor, ...] = ()
    open_question: Optional[str] = None
    notes: Tuple[str, ...] = ()

    def with_notes(self, *notes: str) -> "Verdict":
        return Verdict(
            self.kind, self.reason, self.theorem, self.hypotheses,
            self.families, self.open_question, self.notes + tuple(notes),
        )

    @property
    def family_tags(self) -> List[FamilyTag]:
        return [f.tag for f in self.families]

    def to_dict(self) -> dict:
        return {
            "verdict": self.kind.value,
            "reason": self.reason,
            "theorem": self.theorem,
            "families": [f.to_dict() for f in self.families],
            "hypotheses": list(self.hypotheses),
            "open_question": self.open_question,
            "notes": list(self.notes),
        }


@dataclass(frozen=True, eq=False)
class FamilyMember:
    """A constructed and verified member of a solution family."""
    tag: FamilyTag
    equation: FermatEquation
    candidate: NumericCandidate
    report: VerificationReport
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        equation = self.equation.to_dict()
        if self.candidate.alpha is not None:
            # equation.alpha only holds the exact part when the slope is numeric
            equation["alpha_numeric"] = [_complex_pair(c) for c in self.candidate.alpha]
        return {
            "tag": self.tag.value,
            "equation": equation,
            "candidate": self.candidate.to_dict(),
            "report": self.report.to_dict(),
            "notes": list(self.notes),
        }
