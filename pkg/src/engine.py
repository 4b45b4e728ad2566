"""Expansion, exact and numeric verification of candidate solutions."""

from typing import List, Optional, Tuple

import numpy as np
from loguru import logger
from numpy.polynomial import polynomial as npoly

from .algebra import I_UNIT, RatFun
from .config import Settings, load_settings
from .errors import (
    AllPointsRejected,
    ConstraintViolation,
    DegenerateDifference,
    NotMonomialPair,
    OverflowAtSamplePoint,
    PoleAtSamplePoint,
    PreconditionViolated,
    ProductIdentityFailed,
)
from .exppoly import ExpPoly
from .models import DegreeBalance, FermatEquation, NumericCandidate, VerificationReport


def lhs_expand(eq: FermatEquation, f: ExpPoly) -> ExpPoly:
    """f^m + (R f^(k))^n, expanded exactly."""
    return f ** eq.m + f.derivative(eq.k).scale(eq.R) ** eq.n


def verify_exact(eq: FermatEquation, f: ExpPoly) -> VerificationReport:
    """
    Check f against the equation as an identity of exponential polynomials.

    Args:
        eq: Equation instance
        f: Non-zero candidate solution

    Returns:
        Exact report; Verified iff the residual is the zero ExpPoly
    """
    if f.is_zero():
        raise PreconditionViolated("the zero function is not a candidate")
    residual = lhs_expand(eq, f) - eq.rhs()
    report = VerificationReport.exact(residual)
    if report.verified:
        logger.debug("Exact verification passed")
    else:
        logger.debug(f"Exact verification refuted, {residual.term_count()} residual terms")
    return report


def check_constraints(cand: NumericCandidate, tol: float) -> None:
    for constraint in cand.constraints:
        value = cand.bindings[constraint.name]
        if not constraint.satisfied_by(value, tol):
            logger.error(f"Binding {constraint.name} fails {constraint.to_text()}")
            raise ConstraintViolation(constraint.name, value, constraint.residual(value))


def sample_annulus(rng: np.random.Generator, r_min: float, r_max: float) -> complex:
    radius = rng.uniform(r_min, r_max)
    theta = rng.uniform(0.0, 2.0 * np.pi)
    return complex(radius * np.exp(1j * theta))


def verify_numeric(eq: FermatEquation,
                   cand: NumericCandidate,
                   tol: Optional[float] = None,
                   npoints: Optional[int] = None,
                   seed: Optional[int] = None,
                   settings: Optional[Settings] = None) -> VerificationReport:
    """
    Compare both sides of the equation at seeded sample points.

    Args:
        eq: Equation instance (cand.alpha overrides eq.alpha when set)
        cand: Candidate with bindings and constraints
        tol: Maximum relative residual |lhs - rhs| / (1 + |rhs|)
        npoints: Number of accepted sample points
        seed: Seed of the sampling generator

    Returns:
        Numeric report over the accepted sample points
    """
    settings = settings or load_settings()
    tol = settings.tolerances.residual if tol is None else tol
    npoints = settings.sampling.points if npoints is None else npoints
    seed = settings.sampling.seed if seed is None else seed
    pole_tol = settings.tolerances.pole
    overflow = settings.sampling.overflow_exponent

    check_constraints(cand, settings.tolerances.constraint)

    f = cand.build()
    fk = f.derivative(eq.k)
    alpha = np.asarray(cand.alpha, dtype=complex) if cand.alpha is not None else eq.alpha.to_numpy()

    rng = np.random.default_rng(seed)
    max_draws = settings.sampling.max_draw_factor * npoints
    samples: List[complex] = []
    residuals: List[float] = []
    draws = 0
    while len(samples) < npoints:
        if draws >= max_draws:
            raise AllPointsRejected(f"only {len(samples)} of {npoints} points accepted after {draws} draws")
        draws += 1
        z = sample_annulus(rng, settings.sampling.r_min, settings.sampling.r_max)
        try:
            fz = f.eval(z, pole_tol, overflow)
            fkz = fk.eval(z, pole_tol, overflow)
            rz = eq.R.eval(z, pole_tol)
            qz = eq.Q.eval(z, pole_tol)
        except (PoleAtSamplePoint, OverflowAtSamplePoint) as e:
            logger.debug(f"Rejected sample point: {e}")
            continue
        lhs = fz ** eq.m + (rz * fkz) ** eq.n
        rhs = qz * complex(np.exp(npoly.polyval(z, alpha)))
        residuals.append(abs(lhs - rhs) / (1.0 + abs(rhs)))
        samples.append(z)

    report = VerificationReport.numeric(max(residuals), samples, tol)
    logger.debug(f"Numeric verification: max residual {report.max_residual:.3e} ({report.verdict.value})")
    return report


def degree_condition(eq: FermatEquation, R1: RatFun) -> DegreeBalance:
    """
    Degree balance m k deg(alpha') = deg(Q - R1^m) - m deg(R R1).

    Args:
        eq: Equation with m = n and non-constant alpha
        R1: Non-zero rational coefficient of f = R1 e^{alpha/m}

    Returns:
        Both sides and whether they agree
    """
    R1 = RatFun.coerce(R1)
    if eq.m != eq.n:
        raise PreconditionViolated("degree balance needs m = n")
    if eq.alpha_constant:
        raise PreconditionViolated("degree balance needs a non-constant alpha")
    if R1.is_zero():
        raise PreconditionViolated("R1 must be non-zero")
    difference = eq.Q - R1 ** eq.m
    if difference.is_zero():
        raise DegenerateDifference("Q - R1^m vanishes identically")
    lhs = eq.m * eq.k * eq.alpha.derivative().degree
    rhs = difference.deg - eq.m * (eq.R * R1).deg
    return DegreeBalance(lhs, rhs)


def canonical_decompose(eq: FermatEquation, f: ExpPoly) -> Tuple[ExpPoly, ExpPoly]:
    """
    Split f^2 + (R f^(k))^2 = Q e^alpha into u = R f^(k) + i f and v = R f^(k) - i f.

    Args:
        eq: Equation with m = n = 2
        f: Non-zero candidate

    Returns:
        (u, v), each a single exponential term with u v = Q e^alpha
    """
    if eq.m != 2 or eq.n != 2:
        raise PreconditionViolated("canonical decomposition needs m = n = 2")
    if f.is_zero():
        raise PreconditionViolated("the zero function is not a candidate")
    rfk = f.derivative(eq.k).scale(eq.R)
    i_f = f.scale(RatFun.coerce(I_UNIT))
    u, v = rfk + i_f, rfk - i_f
    for name, part in (("u", u), ("v", v)):
        if part.single_term() is None:
            raise NotMonomialPair(f"{name} = R f^(k) {'+' if name == 'u' else '-'} i f has {part.term_count()} terms")
    if not (u * v - eq.rhs()).is_zero():
        raise ProductIdentityFailed("u v differs from Q e^alpha")
    return u, v
