"""Tests for exact and numeric verification, degree balance and decomposition."""

from dataclasses import replace

import numpy as np
import pytest

from src.algebra import I_UNIT, ONE, Poly, RatFun
from src.engine import canonical_decompose, check_constraints, degree_condition, lhs_expand, verify_exact, verify_numeric
from src.errors import (
    AllPointsRejected,
    ConstraintViolation,
    DegenerateDifference,
    NotMonomialPair,
    PreconditionViolated,
)
from src.exppoly import ExpPoly
from src.models import FermatEquation, NumericCandidate, Outcome, RootConstraint, VerificationMode
from src.numeric import NumericExpPoly
from src.parser import parse_exppoly, parse_ratfun

from .conftest import MISPRINTED_CUBIC_Q

Z = Poly.z()


class TestExactVerification:

    def test_corpus_verifies(self, corpus_case):
        eq, f, entry = corpus_case
        report = verify_exact(eq, f)
        assert report.verified, f"{entry['name']}: residual {report.residual}"
        assert report.mode is VerificationMode.EXACT

    def test_misprinted_right_hand_side_refuted(self, corpus_by_name):
        eq, f = corpus_by_name["cubic_exponent_corrected"]
        misprinted = replace(eq, Q=parse_ratfun(MISPRINTED_CUBIC_Q))
        report = verify_exact(misprinted, f)
        assert report.verdict is Outcome.REFUTED
        assert not report.residual.is_zero()

    def test_intro_example_expansion(self, corpus_by_name):
        eq, f = corpus_by_name["linear_second_derivative"]
        assert lhs_expand(eq, f) == parse_exppoly("(1 + 2*z + 4*z^3)*exp(z^2)")

    def test_zero_candidate_rejected(self, corpus_by_name):
        eq, _ = corpus_by_name["sine"]
        with pytest.raises(PreconditionViolated):
            verify_exact(eq, ExpPoly.zero())

    def test_wrong_candidate_refuted(self, corpus_by_name):
        eq, _ = corpus_by_name["sine"]
        assert not verify_exact(eq, parse_exppoly("exp(i*z)")).verified


class TestNumericVerification:

    def test_agrees_with_exact(self, corpus_case, settings):
        eq, f, _ = corpus_case
        report = verify_numeric(eq, NumericCandidate.from_exact(f), settings=settings)
        assert report.verified == verify_exact(eq, f).verified
        assert report.mode is VerificationMode.NUMERIC
        assert len(report.sample_points) == settings.sampling.points

    def test_misprinted_refuted_numerically(self, corpus_by_name, settings):
        eq, f = corpus_by_name["cubic_exponent_corrected"]
        misprinted = replace(eq, Q=parse_ratfun(MISPRINTED_CUBIC_Q))
        report = verify_numeric(misprinted, NumericCandidate.from_exact(f), settings=settings)
        assert report.verdict is Outcome.REFUTED
        assert report.max_residual > settings.tolerances.residual

    def test_seed_is_reproducible(self, corpus_by_name, settings):
        eq, f = corpus_by_name["sine"]
        cand = NumericCandidate.from_exact(f)
        first = verify_numeric(eq, cand, seed=7, settings=settings)
        second = verify_numeric(eq, cand, seed=7, settings=settings)
        assert first.sample_points == second.sample_points
        assert first.to_dict() == second.to_dict()

    def test_alpha_override(self, settings):
        # f = e^{u z} with u^2 = 2 gives f^2 + f'^2 = 3 e^{2 u z}
        u = complex(np.sqrt(2.0))
        eq = FermatEquation(2, 2, 1, RatFun.one(), RatFun.coerce(3))
        cand = NumericCandidate(
            template="exp(u*z)",
            builder=lambda b: NumericExpPoly.term(1.0, (0j, b["u"])),
            bindings={"u": u},
            constraints=(RootConstraint("u", Z ** 2 - 2),),
            alpha=(0j, 2 * u),
        )
        assert verify_numeric(eq, cand, settings=settings).verified
        assert not verify_numeric(eq, with_alpha(cand, None), settings=settings).verified

    def test_constraint_violation(self, settings):
        cand = NumericCandidate(
            template="exp(a*z)",
            builder=lambda b: NumericExpPoly.term(1.0, (0j, b["a"])),
            bindings={"a": 1.0 + 0j},
            constraints=(RootConstraint("a", Z ** 2 + 1),),
        )
        with pytest.raises(ConstraintViolation) as info:
            check_constraints(cand, settings.tolerances.constraint)
        assert info.value.name == "a"
        eq = FermatEquation(2, 2, 1, RatFun.one(), RatFun.one())
        with pytest.raises(ConstraintViolation):
            verify_numeric(eq, cand, settings=settings)

    def test_all_points_rejected(self, settings):
        tight = replace(settings, sampling=replace(settings.sampling, overflow_exponent=0.1))
        eq = FermatEquation(2, 2, 1, RatFun.one(), RatFun.one())
        cand = NumericCandidate.from_exact(parse_exppoly("exp(z)"))
        with pytest.raises(AllPointsRejected):
            verify_numeric(eq, cand, settings=tight)


def with_alpha(cand: NumericCandidate, alpha) -> NumericCandidate:
    return NumericCandidate(cand.template, cand.builder, cand.bindings, cand.constraints, alpha, cand.exact)


class TestDegreeCondition:

    def test_rational_coefficient_example(self, corpus_by_name):
        eq, _ = corpus_by_name["rational_coefficient_half_exponent"]
        balance = degree_condition(eq, parse_ratfun("(z - 1)/(z + 1)"))
        assert (balance.lhs, balance.rhs) == (0, 0)
        assert balance.holds

    def test_cubic_example(self, corpus_by_name):
        eq, _ = corpus_by_name["cubic_exponent_corrected"]
        balance = degree_condition(eq, Z + 1)
        assert (balance.lhs, balance.rhs) == (6, 6)

    def test_misprint_still_balances(self, corpus_by_name):
        eq, _ = corpus_by_name["cubic_exponent_corrected"]
        balance = degree_condition(replace(eq, Q=parse_ratfun(MISPRINTED_CUBIC_Q)), Z + 1)
        assert balance.holds

    def test_constant_coefficient_fails(self, corpus_by_name):
        eq, _ = corpus_by_name["cubic_exponent_corrected"]
        balance = degree_condition(eq, RatFun.one())
        assert (balance.lhs, balance.rhs) == (6, 9)
        assert not balance.holds

    def test_degenerate_difference(self):
        eq = FermatEquation(2, 2, 1, RatFun.one(), RatFun(Z ** 2), Z)
        with pytest.raises(DegenerateDifference):
            degree_condition(eq, Z)

    @pytest.mark.parametrize("eq", [
        FermatEquation(2, 3, 1, RatFun.one(), RatFun.one(), Z),
        FermatEquation(2, 2, 1, RatFun.one(), RatFun.one()),
    ])
    def test_preconditions(self, eq):
        with pytest.raises(PreconditionViolated):
            degree_condition(eq, RatFun.one())


class TestCanonicalDecomposition:

    def test_sine(self, corpus_by_name):
        eq, f = corpus_by_name["sine"]
        u, v = canonical_decompose(eq, f)
        assert u == ExpPoly.term(ONE, I_UNIT * Z)
        assert v == ExpPoly.term(ONE, -I_UNIT * Z)

    def test_product_identity_on_corpus(self, corpus_by_name):
        for name in ("quadratic_exponent_difference", "rational_factor_pair"):
            eq, f = corpus_by_name[name]
            u, v = canonical_decompose(eq, f)
            assert u * v == eq.rhs()

    def test_not_monomial_pair(self):
        eq = FermatEquation(2, 2, 1, RatFun.one(), RatFun.one())
        with pytest.raises(NotMonomialPair):
            canonical_decompose(eq, parse_exppoly("exp(z) + exp(2*z)"))

    def test_requires_squares(self, corpus_by_name):
        eq, f = corpus_by_name["cubic_exponent_corrected"]
        with pytest.raises(PreconditionViolated):
            canonical_decompose(eq, f)
