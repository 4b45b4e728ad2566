"""
Classification of f^m + (R f^(k))^n = Q e^alpha and constructors for its solution families.

Family tags follow the fixed external interface:
    T23_A1, T23_A2, T23_B  -- Q = 1, R a non-zero constant, alpha linear
    T24_A .. T24_E         -- m = n with rational R, Q
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
from loguru import logger

from .algebra import (
    I_UNIT,
    NEG_INFINITY,
    ONE,
    ZERO,
    GaussianRational,
    Poly,
    RatFun,
    zeros_have_multiplicity_below,
)
from .config import Settings, load_settings
from .engine import degree_condition, verify_exact, verify_numeric
from .errors import (
    DegenerateDifference,
    EmptyFamily,
    FamilyDegenerate,
    NoSolutionInFamily,
    PreconditionViolated,
    SideConditionFailed,
    VerificationFailed,
    ZeroBase,
)
from .exppoly import ExpPoly
from .models import (
    FamilyDescriptor,
    FamilyMember,
    FamilyTag,
    FermatEquation,
    NumericCandidate,
    RootConstraint,
    SideCondition,
    Verdict,
    VerdictKind,
)
from .numeric import NumericExpPoly
from .parser import print_canonical

GROWTH_HYPOTHESES = (
    "(i) ρ(f)=∞",
    "(ii) deg α = 0",
    "(iii) deg α < μ(f)",
)
NO_RATIONAL_REASON = "has no rational solution provided that α is non-constant"
FINITE_ORDER_NOTE = "has no meromorphic solution of infinite order"
INV_2I = ONE / (2 * I_UNIT)

Number = Union[GaussianRational, complex]


# Gates


def exponent_gate(m: int, n: int) -> bool:
    """1/m + 1/n >= 1, compared exactly."""
    return Fraction(1, m) + Fraction(1, n) >= 1


def nonexistence(m: int, n: int, k: int, alpha_constant: bool) -> Verdict:
    """
    Nonexistence verdict for m != n, m + n > 2.

    Args:
        m: Power of f
        n: Power of R f^(k)
        k: Derivative order
        alpha_constant: Whether alpha is constant

    Returns:
        NoTranscendentalSolution, or Unclassified when n > m = 1 and n <= k
    """
    if m == n or m + n <= 2:
        raise PreconditionViolated("nonexistence gate needs m != n and m + n > 2")
    if n > m == 1 and n <= k:
        return Verdict(
            VerdictKind.UNCLASSIFIED,
            reason=f"n > m = 1 with n = {n} <= k = {k} is not covered",
            open_question="Question 3",
        )
    if m > 1 and n > 1:
        condition = "(i) m > n > 1 or n > m > 1"
    else:
        condition = "(ii) m > n = 1 or n > m = 1 and n >= k + 1"
    if alpha_constant:
        return Verdict(
            VerdictKind.NO_TRANSCENDENTAL_SOLUTION,
            reason=f"does not have any transcendental meromorphic solution: condition {condition}",
            theorem="2.1",
        )
    return Verdict(
        VerdictKind.NO_TRANSCENDENTAL_SOLUTION,
        reason=f"f can not be a solution under condition {condition}, provided one growth hypothesis holds",
        theorem="2.1",
        hypotheses=GROWTH_HYPOTHESES,
    )


def rational_solution_check(eq: FermatEquation) -> Verdict:
    """NoRationalSolution when alpha is non-constant, otherwise Unclassified."""
    if not eq.alpha_constant:
        return Verdict(VerdictKind.NO_RATIONAL_SOLUTION, reason=NO_RATIONAL_REASON)
    return Verdict(VerdictKind.UNCLASSIFIED, reason="alpha is constant; rational solutions are not excluded")


# Family descriptors


def _alpha_degree(eq: FermatEquation) -> int:
    degree = eq.alpha.degree
    return -1 if degree is NEG_INFINITY else degree


def _k_odd_condition(eq: FermatEquation) -> SideCondition:
    if eq.alpha_constant:
        return SideCondition("k odd when alpha is constant", eq.k % 2 == 1, f"k = {eq.k}")
    return SideCondition("k odd when alpha is constant", True, "alpha is non-constant")


def _t23_conditions(eq: FermatEquation, m_ok: bool, linear_exact: bool) -> List[SideCondition]:
    degree = _alpha_degree(eq)
    return [
        SideCondition("m", m_ok, f"m = {eq.m}"),
        SideCondition("Q = 1", eq.Q == RatFun.one()),
        SideCondition("R constant", eq.R.is_constant()),
        SideCondition(
            "alpha = a z + b" + (" with a != 0" if linear_exact else ""),
            degree == 1 if linear_exact else degree <= 1,
            f"deg alpha = {eq.alpha.degree}",
        ),
    ]


def _descriptors(eq: FermatEquation) -> List[FamilyDescriptor]:
    m2 = eq.m == 2
    alpha_nc = SideCondition("alpha non-constant", not eq.alpha_constant)
    linear = SideCondition("alpha linear", _alpha_degree(eq) <= 1, f"deg alpha = {eq.alpha.degree}")
    q_const = SideCondition("Q constant", eq.Q.is_constant())
    deg_r = eq.R.deg
    descriptors = [
        FamilyDescriptor(
            FamilyTag.T23_A1,
            template="(d^2 - 1)/(2*i*d)*exp((a*z + b)/2)",
            free_parameters=(("d", "non-zero constant"),),
            constraints=("d^2*(R*(a/2)^k - i) = R*(a/2)^k + i",),
            side_conditions=tuple(_t23_conditions(eq, m2, True)),
        ),
        FamilyDescriptor(
            FamilyTag.T23_A2,
            template="exp((a1*z + a2)/2)*sin(b1*z + b2)",
            free_parameters=(("a2", "constant"), ("b2", "constant"), ("b1", "non-zero constant")),
            constraints=("R*(a1/2 + i*b1)^k = i", "R*(a1/2 - i*b1)^k = -i"),
            side_conditions=tuple(_t23_conditions(eq, m2, False) + [_k_odd_condition(eq)]),
        ),
        FamilyDescriptor(
            FamilyTag.T23_B,
            template="c*exp((a*z + b)/m)",
            free_parameters=(("c", "non-zero constant"),),
            constraints=("c^m*(R^m*(a/m)^(k*m) + 1) = 1",),
            side_conditions=tuple(_t23_conditions(eq, eq.m >= 3, True)),
        ),
        FamilyDescriptor(
            FamilyTag.T24_A,
            template="R1*exp(alpha/m)",
            free_parameters=(("R1", "non-zero rational function"),),
            constraints=(
                "m*k*deg(alpha') = deg(Q - R1^m) - m*deg(R*R1)",
                "R1^m + R^m*exp(-alpha)*((R1*exp(alpha/m))^(k))^m = Q",
            ),
            side_conditions=(alpha_nc,),
        ),
        FamilyDescriptor(
            FamilyTag.T24_B,
            template="(d^2*Q1 - Q2)/(2*i*d)*exp(alpha/2)",
            free_parameters=(("Q1", "rational function"), ("Q2", "rational function"), ("d", "non-zero constant")),
            constraints=("Q1*Q2 = Q", "d^2*Q1 - Q2 != 0"),
            side_conditions=(SideCondition("m = 2", m2), alpha_nc),
        ),
        FamilyDescriptor(
            FamilyTag.T24_C,
            template="(Q1*exp(a1*z + b1) - Q2*exp(a2*z + b2))/(2*i)",
            free_parameters=(("Q1", "constant"), ("b1", "constant")),
            constraints=("A*a1^k = i", "A*a2^k = -i", "Q1*Q2 = Q", "alpha = (a1 + a2)*z + b1 + b2"),
            side_conditions=(
                SideCondition("m = 2", m2),
                SideCondition("R constant", eq.R.is_constant()),
                q_const,
                linear,
                _k_odd_condition(eq),
            ),
        ),
        FamilyDescriptor(
            FamilyTag.T24_D,
            template="(Q1*exp(a1*z + b1) - Q2*exp(a2*z + b2))/(2*i)",
            free_parameters=(("Q1", "rational function"), ("a1", "non-zero constant"), ("b1", "constant")),
            constraints=("a1^k + a2^k = 0", "Q1*Q2 = Q", "alpha = (a1 + a2)*z + b1 + b2"),
            side_conditions=(
                SideCondition("m = 2", m2),
                SideCondition("deg(R) = 0", deg_r == 0, f"deg R = {deg_r}"),
                q_const,
                linear,
                _k_odd_condition(eq),
            ),
        ),
        FamilyDescriptor(
            FamilyTag.T24_E,
            template="(Q1*exp(t*P + c) - Q2*exp(P))/(2*i)",
            free_parameters=(("P", "non-constant polynomial"), ("Q1", "rational function"), ("c", "constant")),
            constraints=("t^k = -1", "(t + 1)*P' = alpha'", "k*deg(P') = -deg(R)", "Q1*Q2 = Q"),
            side_conditions=(
                SideCondition("m = 2", m2),
                SideCondition("deg(R) < 0", deg_r < 0, f"deg R = {deg_r}"),
                SideCondition(
                    "k divides -deg(R)",
                    deg_r < 0 and (-deg_r) % eq.k == 0,
                    f"k = {eq.k}, deg R = {deg_r}",
                ),
                _k_odd_condition(eq),
            ),
        ),
    ]
    return descriptors


def classify(eq: FermatEquation) -> Verdict:
    """
    Dispatch an equation to the nonexistence gates or the solution families.

    Args:
        eq: Equation instance

    Returns:
        Verdict with notes (rational-solution remark, finite-order remark)
    """
    rational = rational_solution_check(eq)
    notes: Tuple[str, ...] = (rational.reason,) if rational.kind is VerdictKind.NO_RATIONAL_SOLUTION else ()
    if eq.m != eq.n:
        verdict = nonexistence(eq.m, eq.n, eq.k, eq.alpha_constant)
        logger.info(f"m={eq.m}, n={eq.n}: {verdict.kind.value}")
        return verdict.with_notes(*notes)
    if eq.m == 1:
        return Verdict(
            VerdictKind.UNCLASSIFIED,
            reason="m = n = 1 lies outside m + n > 2; candidates can still be verified",
            notes=notes,
        )

    notes = notes + (FINITE_ORDER_NOTE,)
    families = tuple(
        d for d in _descriptors(eq)
        if not any(c.holds is False for c in d.side_conditions)
    )
    if not families:
        return Verdict(
            VerdictKind.NO_TRANSCENDENTAL_SOLUTION,
            reason="no solution family admits the given R, Q and alpha",
            theorem="2.4",
            notes=notes,
        )
    theorem = "2.3" if any(f.tag.theorem == "2.3" for f in families) else "2.4"
    logger.info(f"m = n = {eq.m}: {len(families)} candidate families")
    return Verdict(
        VerdictKind.FAMILIES,
        reason=f"{len(families)} solution families are compatible with the data",
        theorem=theorem,
        families=families,
        notes=notes,
    )


# Roots


@dataclass(frozen=True)
class BoundRoot:
    """Numeric root x of X^k - w together with its defining polynomial."""
    value: complex
    constraint: Poly
    exact: Optional[GaussianRational] = None

    def as_number(self) -> Number:
        return self.exact if self.exact is not None else self.value


def _snap(x: complex, w: GaussianRational, k: int) -> Optional[GaussianRational]:
    guess = GaussianRational(
        Fraction(float(x.real)).limit_denominator(10 ** 4),
        Fraction(float(x.imag)).limit_denominator(10 ** 4),
    )
    return guess if guess ** k == w else None


def _exact_base(w: Union[GaussianRational, complex, float, int, Tuple[float, float]]) -> GaussianRational:
    # floats are binary rationals, so the conversion is exact
    if isinstance(w, tuple):
        w = complex(*w)
    if isinstance(w, (complex, float)):
        return GaussianRational(Fraction(w.real), Fraction(w.imag))
    return GaussianRational.coerce(w)


def kth_roots(w: Union[GaussianRational, complex, Tuple[float, float]], k: int) -> List[BoundRoot]:
    """
    All k distinct roots of X^k = w, ordered by principal argument.

    Args:
        w: Non-zero base: a Gaussian rational, a complex number or a (re, im) pair
        k: Root order

    Returns:
        Roots with the constraint X^k - w; Gaussian-rational roots are exact
    """
    w = _exact_base(w)
    if w.is_zero():
        raise ZeroBase("roots of zero requested")
    if k < 1:
        raise PreconditionViolated("root order must be positive")
    wc = w.to_complex()
    modulus = abs(wc) ** (1.0 / k)
    phase = float(np.angle(wc))
    constraint = Poly.monomial(ONE, k) - w
    roots = []
    for j in range(k):
        x = complex(modulus * np.exp(1j * (phase + 2.0 * np.pi * j) / k))
        x -= (x ** k - wc) / (k * x ** (k - 1))
        exact = _snap(x, w, k)
        roots.append(BoundRoot(exact.to_complex() if exact is not None else x, constraint, exact))
    return sorted(roots, key=lambda r: float(np.angle(r.value)))


# Constructors


def _finalize(tag: FamilyTag,
              eq: FermatEquation,
              candidate: NumericCandidate,
              notes: Tuple[str, ...] = (),
              settings: Optional[Settings] = None) -> FamilyMember:
    """Verify a constructed candidate; refutation is a hard failure."""
    if candidate.exact is not None:
        report = verify_exact(eq, candidate.exact)
    else:
        report = verify_numeric(eq, candidate, settings=settings)
    if not report.verified:
        logger.error(f"{tag.value} candidate refuted: {candidate.template}")
        raise VerificationFailed(tag.value, report)
    logger.debug(f"{tag.value} candidate verified ({report.mode.value})")
    return FamilyMember(tag, eq, candidate, report, notes)


def _gr(value: Any, name: str) -> GaussianRational:
    try:
        return GaussianRational.coerce(value)
    except TypeError:
        raise PreconditionViolated(f"{name} must be a Gaussian rational") from None


def _require(condition: bool, name: str, detail: str = "") -> None:
    if not condition:
        logger.warning(f"Side condition '{name}' failed {detail}")
        raise SideConditionFailed(name, detail)


def _close(x: complex, y: complex, tol: float = 1e-9) -> bool:
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def _to_complex(value: Number) -> complex:
    return value.to_complex() if isinstance(value, GaussianRational) else complex(value)


def construct_t23_B(m: int, k: int, A, a, b=ZERO, settings: Optional[Settings] = None) -> List[FamilyMember]:
    """
    Members c e^{(az+b)/m} of f^m + (A f^(k))^m = e^{az+b}, m >= 3.

    Args:
        m: Power, at least 3
        k: Derivative order
        A: Constant R
        a: Non-zero slope of alpha
        b: Constant term of alpha

    Returns:
        One verified member per root c of c^m (A^m (a/m)^{km} + 1) = 1
    """
    if m < 3:
        raise PreconditionViolated("this family needs m >= 3")
    A, a, b = _gr(A, "A"), _gr(a, "a"), _gr(b, "b")
    if A.is_zero() or a.is_zero():
        raise PreconditionViolated("A and a must be non-zero")
    w = A ** m * (a / m) ** (k * m) + 1
    if w.is_zero():
        raise NoSolutionInFamily("A^m (a/m)^(km) = -1 makes c^m * 0 = 1 unsatisfiable")
    eq = FermatEquation(m, m, k, A, ONE, Poly((b, a)))
    exponent = Poly((b / m, a / m))
    exponent_c = tuple(exponent.to_numpy())
    template = f"c*exp({print_canonical(exponent)})"
    members = []
    for root in kth_roots(ONE / w, m):
        candidate = NumericCandidate(
            template=template,
            builder=lambda bind, e=exponent_c: NumericExpPoly.term(bind["c"], e),
            bindings={"c": root.value},
            constraints=(RootConstraint("c", root.constraint),),
            exact=ExpPoly.term(root.exact, exponent) if root.exact is not None else None,
        )
        members.append(_finalize(FamilyTag.T23_B, eq, candidate, settings=settings))
    logger.info(f"T23_B: {len(members)} members for m={m}, k={k}")
    return members


def construct_t23_A1(k: int, A, a, b=ZERO, settings: Optional[Settings] = None) -> List[FamilyMember]:
    """Members (d^2 - 1)/(2 i d) e^{(az+b)/2} with d^2 = (u + i)/(u - i), u = A (a/2)^k."""
    A, a, b = _gr(A, "A"), _gr(a, "a"), _gr(b, "b")
    if A.is_zero() or a.is_zero():
        raise PreconditionViolated("A and a must be non-zero")
    u = A * (a / 2) ** k
    if u == I_UNIT:
        raise FamilyDegenerate("u = i: the defining relation has no solution d")
    if u == -I_UNIT:
        raise FamilyDegenerate("u = -i forces d = 0")
    d2 = (u + I_UNIT) / (u - I_UNIT)
    if d2 == ONE:
        raise FamilyDegenerate("d^2 = 1 gives f = 0")
    eq = FermatEquation(2, 2, k, A, ONE, Poly((b, a)))
    exponent = Poly((b / 2, a / 2))
    exponent_c = tuple(exponent.to_numpy())
    template = f"(d^2 - 1)/(2*i*d)*exp({print_canonical(exponent)})"
    members = []
    for root in kth_roots(d2, 2):
        exact = None
        if root.exact is not None:
            d = root.exact
            exact = ExpPoly.term((d * d - 1) / (2 * I_UNIT * d), exponent)
        candidate = NumericCandidate(
            template=template,
            builder=lambda bind, e=exponent_c: NumericExpPoly.term((bind["d"] ** 2 - 1) / (2j * bind["d"]), e),
            bindings={"d": root.value},
            constraints=(RootConstraint("d", root.constraint),),
            exact=exact,
        )
        members.append(_finalize(FamilyTag.T23_A1, eq, candidate, settings=settings))
    logger.info(f"T23_A1: {len(members)} members for k={k}")
    return members


def construct_t23_A2(k: int, A, a2=ZERO, b2=ZERO, settings: Optional[Settings] = None) -> List[FamilyMember]:
    """
    Members e^{(a1 z + a2)/2} sin(b1 z + b2) with A (a1/2 + i b1)^k = i, A (a1/2 - i b1)^k = -i.

    Args:
        k: Derivative order
        A: Constant R
        a2: Free constant in alpha = a1 z + a2
        b2: Free phase

    Returns:
        One verified member per admissible root pair (u, v) = (a1/2 + i b1, a1/2 - i b1)
    """
    A, a2, b2 = _gr(A, "A"), _gr(a2, "a2"), _gr(b2, "b2")
    if A.is_zero():
        raise PreconditionViolated("A must be non-zero")
    a2c, b2c = a2.to_complex(), b2.to_complex()
    shift_u = (a2c / 2 + 1j * b2c,)
    shift_v = (a2c / 2 - 1j * b2c,)

    def builder(bind: Mapping[str, complex]) -> NumericExpPoly:
        return (NumericExpPoly.term(-0.5j, shift_u + (bind["u"],))
                - NumericExpPoly.term(-0.5j, shift_v + (bind["v"],)))

    members = []
    for u in kth_roots(I_UNIT / A, k):
        for v in kth_roots(-I_UNIT / A, k):
            a1 = u.value + v.value
            b1 = (u.value - v.value) / 2j
            if abs(b1) < 1e-12:
                continue
            notes: Tuple[str, ...] = ()
            if abs(a1) < 1e-12:
                if k % 2 == 0:
                    logger.warning(f"T23_A2: a1 = 0 with even k={k}, pair discarded")
                    continue
                notes = ("a1 = 0 and k is odd",)
            exact = None
            alpha = Poly((a2,))
            if u.exact is not None and v.exact is not None:
                alpha = Poly((a2, u.exact + v.exact))
                exact = (ExpPoly.term(INV_2I, Poly((a2 / 2 + I_UNIT * b2, u.exact)))
                         - ExpPoly.term(INV_2I, Poly((a2 / 2 - I_UNIT * b2, v.exact))))
            else:
                notes = notes + (f"alpha slope a1 = {a1:.12g} is not a Gaussian rational",)
            eq = FermatEquation(2, 2, k, A, ONE, alpha)
            candidate = NumericCandidate(
                template="exp(((u + v)*z + a2)/2)*sin((u - v)/(2*i)*z + b2)",
                builder=builder,
                bindings={"u": u.value, "v": v.value},
                constraints=(RootConstraint("u", u.constraint), RootConstraint("v", v.constraint)),
                alpha=(a2c, a1),
                exact=exact,
            )
            members.append(_finalize(FamilyTag.T23_A2, eq, candidate, notes, settings))
    if not members:
        raise EmptyFamily("no root pair gives b1 != 0")
    logger.info(f"T23_A2: {len(members)} members for k={k}")
    return members


def _exp_pair(Q1: RatFun, e1: Tuple[Number, ...], Q2: RatFun, e2: Tuple[Number, ...]):
    """(Q1 e^{e1} - Q2 e^{e2}) / (2i) in exact form when possible, and as a numeric builder."""
    exact = None
    if all(isinstance(x, GaussianRational) for x in e1 + e2):
        exact = ExpPoly.term(Q1 * INV_2I, Poly(e1)) - ExpPoly.term(Q2 * INV_2I, Poly(e2))
    c1 = tuple(_to_complex(x) for x in e1)
    c2 = tuple(_to_complex(x) for x in e2)

    def builder(_: Mapping[str, complex]) -> NumericExpPoly:
        return NumericExpPoly.term(-0.5j, c1, Q1) - NumericExpPoly.term(-0.5j, c2, Q2)

    return exact, builder


def _pick_root(params: Mapping[str, Any],
               name: str,
               w: GaussianRational,
               k: int,
               prefer: Optional[Callable[[complex], float]] = None) -> Tuple[Number, RootConstraint]:
    """Root of X^k = w given explicitly, by index, or by preference."""
    constraint = RootConstraint(name, Poly.monomial(ONE, k) - w)
    if name in params:
        value = params[name]
        if isinstance(value, complex):
            _require(constraint.satisfied_by(value, 1e-10), f"{name}^k = {w}", f"{name} = {value}")
            return value, constraint
        value = _gr(value, name)
        _require(value ** k == w, f"{name}^k = {w}", f"{name} = {value}")
        return value, constraint
    roots = kth_roots(w, k)
    if f"{name}_root" in params:
        root = roots[int(params[f"{name}_root"]) % k]
    elif prefer is not None:
        root = min(roots, key=lambda r: prefer(r.value))
    else:
        root = roots[0]
    return root.as_number(), constraint


def _alpha_parts(eq: FermatEquation) -> Tuple[GaussianRational, GaussianRational]:
    _require(_alpha_degree(eq) <= 1, "alpha linear", f"deg alpha = {eq.alpha.degree}")
    return eq.alpha.coeff(0), eq.alpha.coeff(1)


def _check_linear_alpha(eq: FermatEquation, a1: Number, a2: Number, b1, b2) -> None:
    alpha0, alpha1 = _alpha_parts(eq)
    if isinstance(a1, GaussianRational) and isinstance(a2, GaussianRational):
        _require(a1 + a2 == alpha1, "alpha = (a1 + a2) z + b1 + b2", f"a1 + a2 = {a1 + a2}")
    else:
        _require(_close(_to_complex(a1) + _to_complex(a2), alpha1.to_complex()),
                 "alpha = (a1 + a2) z + b1 + b2", "slope mismatch")
    _require(b1 + b2 == alpha0, "alpha = (a1 + a2) z + b1 + b2", f"b1 + b2 = {b1 + b2}")
    if eq.alpha_constant:
        _require(eq.k % 2 == 1, "k odd", f"alpha constant, k = {eq.k}")


def _factor_pair(eq: FermatEquation, params: Mapping[str, Any]) -> Tuple[RatFun, RatFun]:
    Q1 = RatFun.coerce(params.get("Q1", eq.Q))
    _require(not Q1.is_zero(), "Q1 non-zero")
    Q2 = RatFun.coerce(params["Q2"]) if "Q2" in params else eq.Q / Q1
    _require(Q1 * Q2 == eq.Q, "Q1 Q2 = Q", f"Q1 Q2 = {print_canonical(Q1 * Q2)}")
    return Q1, Q2


def _t24_a(eq: FermatEquation, params: Mapping[str, Any], settings: Optional[Settings]) -> FamilyMember:
    R1 = RatFun.coerce(params["R1"])
    _require(eq.m == eq.n, "m = n")
    _require(not eq.alpha_constant, "alpha non-constant")
    _require(not R1.is_zero(), "R1 non-zero")
    try:
        balance = degree_condition(eq, R1)
    except DegenerateDifference:
        raise SideConditionFailed("degree balance", "Q - R1^m vanishes identically") from None
    _require(balance.holds, "degree balance", f"{balance.lhs} != {balance.rhs}")
    g = ExpPoly.term(R1, eq.alpha.scale(Fraction(1, eq.m))).derivative(eq.k)
    identity = (ExpPoly.term(R1 ** eq.m)
                + (g ** eq.m).scale(eq.R ** eq.m) * ExpPoly.term(ONE, -eq.alpha)
                - ExpPoly.term(eq.Q))
    _require(identity.is_zero(), "r1_identity", "R1^m + R^m e^-alpha ((R1 e^(alpha/m))^(k))^m != Q")
    f = ExpPoly.term(R1, eq.alpha.scale(Fraction(1, eq.m)))
    candidate = NumericCandidate.from_exact(f)
    return _finalize(FamilyTag.T24_A, eq, candidate, settings=settings)


def _t24_b(eq: FermatEquation, params: Mapping[str, Any], settings: Optional[Settings]) -> FamilyMember:
    _require(eq.m == eq.n == 2, "m = n = 2")
    _require(not eq.alpha_constant, "alpha non-constant")
    d = _gr(params["d"], "d")
    _require(not d.is_zero(), "d non-zero")
    Q1, Q2 = _factor_pair(eq, params)
    numerator = Q1 * (d * d) - Q2
    _require(not numerator.is_zero(), "d^2 Q1 - Q2 != 0")
    f = ExpPoly.term(numerator / (2 * I_UNIT * d), eq.alpha.scale(Fraction(1, 2)))
    return _finalize(FamilyTag.T24_B, eq, NumericCandidate.from_exact(f), settings=settings)


def _t24_c(eq: FermatEquation, params: Mapping[str, Any], settings: Optional[Settings]) -> FamilyMember:
    _require(eq.m == eq.n == 2, "m = n = 2")
    _require(eq.R.is_constant(), "R constant")
    _require(eq.Q.is_constant(), "Q constant")
    A = eq.R.constant_value()
    alpha0, alpha1 = _alpha_parts(eq)
    Q1, Q2 = _factor_pair(eq, params)
    _require(Q1.is_constant() and Q2.is_constant(), "Q1, Q2 constant")
    a1, c1 = _pick_root(params, "a1", I_UNIT / A, eq.k)
    target = alpha1.to_complex() - _to_complex(a1)
    a2, c2 = _pick_root(params, "a2", -I_UNIT / A, eq.k, prefer=lambda x: abs(x - target))
    b1 = _gr(params.get("b1", ZERO), "b1")
    b2 = _gr(params.get("b2", alpha0 - b1), "b2")
    _check_linear_alpha(eq, a1, a2, b1, b2)
    exact, builder = _exp_pair(Q1, (b1, a1), Q2, (b2, a2))
    candidate = NumericCandidate(
        template="(Q1*exp(a1*z + b1) - Q2*exp(a2*z + b2))/(2*i)",
        builder=builder,
        bindings={"a1": _to_complex(a1), "a2": _to_complex(a2)},
        constraints=(c1, c2),
        exact=exact,
    )
    return _finalize(FamilyTag.T24_C, eq, candidate, settings=settings)


def _t24_d(eq: FermatEquation, params: Mapping[str, Any], settings: Optional[Settings]) -> FamilyMember:
    _require(eq.m == eq.n == 2, "m = n = 2")
    _require(eq.R.deg == 0, "deg(R) = 0", f"deg R = {eq.R.deg}")
    _require(eq.Q.is_constant(), "Q constant")
    alpha0, alpha1 = _alpha_parts(eq)
    Q1, Q2 = _factor_pair(eq, params)
    a1 = _gr(params["a1"], "a1")
    _require(not a1.is_zero(), "a1 non-zero")
    target = (alpha1 - a1).to_complex()
    a2, c2 = _pick_root(params, "a2", -(a1 ** eq.k), eq.k, prefer=lambda x: abs(x - target))
    b1 = _gr(params.get("b1", ZERO), "b1")
    b2 = _gr(params.get("b2", alpha0 - b1), "b2")
    _check_linear_alpha(eq, a1, a2, b1, b2)
    notes = () if not eq.R.is_constant() else ("R is constant; the data also fits the constant-R family",)
    exact, builder = _exp_pair(Q1, (b1, a1), Q2, (b2, a2))
    candidate = NumericCandidate(
        template="(Q1*exp(a1*z + b1) - Q2*exp(a2*z + b2))/(2*i)",
        builder=builder,
        bindings={"a2": _to_complex(a2)},
        constraints=(c2,),
        exact=exact,
    )
    return _finalize(FamilyTag.T24_D, eq, candidate, notes, settings)


def _t24_e(eq: FermatEquation, params: Mapping[str, Any], settings: Optional[Settings]) -> FamilyMember:
    _require(eq.m == eq.n == 2, "m = n = 2")
    P = Poly.coerce(params["P"])
    _require(not P.is_constant(), "P non-constant")
    deg_r = eq.R.deg
    _require(deg_r < 0, "deg(R) < 0", f"deg R = {deg_r}")
    dP = P.derivative()
    _require(eq.k * dP.degree == -deg_r, "k deg(P') = -deg(R)", f"{eq.k}*{dP.degree} vs {-deg_r}")
    dalpha = eq.alpha.derivative()

    def slope_gap(t: complex) -> float:
        width = max(len(dP.coeffs), len(dalpha.coeffs), 1)
        lhs = np.pad(dP.to_numpy(), (0, width - len(dP.to_numpy())))
        rhs = np.pad(dalpha.to_numpy(), (0, width - len(dalpha.to_numpy())))
        return float(np.max(np.abs((t + 1) * lhs - rhs)))

    t, t_constraint = _pick_root(params, "t", -ONE, eq.k, prefer=slope_gap)
    if isinstance(t, GaussianRational):
        _require(dP.scale(t + 1) == dalpha, "(t + 1) P' = alpha'")
    else:
        _require(slope_gap(t) <= 1e-9, "(t + 1) P' = alpha'")
    if eq.alpha_constant:
        _require(isinstance(t, GaussianRational) and t == -ONE and eq.k % 2 == 1, "t = -1 and k odd", f"t = {t}, k = {eq.k}")

    c: Number
    if isinstance(t, GaussianRational):
        c = _gr(params["c"], "c") if "c" in params else eq.alpha.constant_term - (t + 1) * P.constant_term
        _require(c + (t + 1) * P.constant_term == eq.alpha.constant_term,
                 "alpha(0) = (t + 1) P(0) + c")
    else:
        alpha0 = eq.alpha.constant_term.to_complex()
        c = _gr(params["c"], "c").to_complex() if "c" in params else alpha0 - (t + 1) * P.constant_term.to_complex()
        _require(_close(c + (t + 1) * P.constant_term.to_complex(), alpha0),
                 "alpha(0) = (t + 1) P(0) + c", f"c = {c}")

    Q1, Q2 = _factor_pair(eq, params)
    if zeros_have_multiplicity_below(eq.R.num, eq.k):
        _require(all(q.is_polynomial() for q in (Q1, Q2, eq.Q)),
                 "Q1, Q2, Q polynomials", "all zeros of R have multiplicity at most k - 1")

    notes: List[str] = []
    if eq.k == 1:
        if eq.R != RatFun.one() / RatFun(dP):
            notes.append(f"k = 1: R differs from 1/P' (here R*P' = {print_canonical(eq.R * RatFun(dP))}); "
                         "the operative conditions are R*P1' = i, R*P2' = -i")
        if not (Q1.is_constant() and Q2.is_constant()):
            notes.append("k = 1 with non-constant Q1, Q2")

    if isinstance(t, GaussianRational):
        scaled = [t * a for a in P.coeffs]
        e1 = (scaled[0] + c,) + tuple(scaled[1:])
    else:
        scaled_c = [t * a.to_complex() for a in P.coeffs]
        e1 = (scaled_c[0] + c,) + tuple(scaled_c[1:])
    e2 = tuple(P.coeffs)
    exact, builder = _exp_pair(Q1, e1, Q2, e2)
    candidate = NumericCandidate(
        template="(Q1*exp(t*P + c) - Q2*exp(P))/(2*i)",
        builder=builder,
        bindings={"t": _to_complex(t)},
        constraints=(t_constraint,),
        exact=exact,
    )
    return _finalize(FamilyTag.T24_E, eq, candidate, tuple(notes), settings)


_T24_BUILDERS = {
    FamilyTag.T24_A: _t24_a,
    FamilyTag.T24_B: _t24_b,
    FamilyTag.T24_C: _t24_c,
    FamilyTag.T24_D: _t24_d,
    FamilyTag.T24_E: _t24_e,
}


def construct_t24(tag: Union[FamilyTag, str],
                  eq: FermatEquation,
                  params: Optional[Dict[str, Any]] = None,
                  settings: Optional[Settings] = None) -> FamilyMember:
    """
    Build and verify one member of a family with m = n.

    Args:
        tag: One of T24_A .. T24_E
        eq: Equation instance
        params: Family parameters (R1; Q1, Q2, d; a1, a2, b1, b2; P, t, c ...)

    Returns:
        Verified FamilyMember

    Raises:
        SideConditionFailed: A side condition of the family does not hold
        VerificationFailed: The constructed candidate was refuted
    """
    tag = FamilyTag(tag) if isinstance(tag, str) else tag
    if tag not in _T24_BUILDERS:
        raise PreconditionViolated(f"{tag.value} is not an m = n family tag")
    settings = settings or load_settings()
    logger.info(f"Constructing {tag.value} member")
    return _T24_BUILDERS[tag](eq, params or {}, settings)
