"""Tests for the classifier, root finder and family constructors."""

from fractions import Fraction

import pytest

import src.classify as classify_module
from src.algebra import I_UNIT, ONE, GaussianRational, Poly, RatFun
from src.classify import (
    FINITE_ORDER_NOTE,
    GROWTH_HYPOTHESES,
    NO_RATIONAL_REASON,
    classify,
    construct_t23_A1,
    construct_t23_A2,
    construct_t23_B,
    construct_t24,
    exponent_gate,
    kth_roots,
    nonexistence,
    rational_solution_check,
)
from src.errors import (
    FamilyDegenerate,
    NoSolutionInFamily,
    PreconditionViolated,
    SideConditionFailed,
    VerificationFailed,
    ZeroBase,
)
from src.exppoly import ExpPoly
from src.models import FamilyTag, FermatEquation, VerdictKind, VerificationMode
from src.parser import parse_poly, parse_ratfun

from .conftest import MISPRINTED_CUBIC_Q

Z = Poly.z()


def equation(m, n, k, R="1", Q="1", alpha="0") -> FermatEquation:
    return FermatEquation(m, n, k, parse_ratfun(R), parse_ratfun(Q), parse_poly(alpha))


class TestGates:

    @pytest.mark.parametrize("m,n,expected", [
        (1, 1, True), (1, 5, True), (2, 2, True), (2, 3, False), (3, 3, False),
    ])
    def test_exponent_gate(self, m, n, expected):
        assert exponent_gate(m, n) is expected

    @pytest.mark.parametrize("alpha_constant", [True, False])
    def test_nonexistence_truth_table(self, alpha_constant):
        for m in range(1, 6):
            for n in range(1, 6):
                if m == n:
                    continue
                for k in (1, 2, 3):
                    verdict = nonexistence(m, n, k, alpha_constant)
                    if n > m == 1 and n <= k:
                        assert verdict.kind is VerdictKind.UNCLASSIFIED, (m, n, k)
                        assert verdict.open_question == "Question 3"
                        continue
                    assert verdict.kind is VerdictKind.NO_TRANSCENDENTAL_SOLUTION, (m, n, k)
                    assert verdict.theorem == "2.1"
                    assert verdict.hypotheses == (() if alpha_constant else GROWTH_HYPOTHESES)
                    expected = "(i)" if m > 1 and n > 1 else "(ii)"
                    assert expected in verdict.reason

    def test_nonexistence_rejects_equal_powers(self):
        with pytest.raises(PreconditionViolated):
            nonexistence(2, 2, 1, True)

    def test_rational_solution_check(self):
        verdict = rational_solution_check(equation(3, 3, 1, alpha="z^2"))
        assert verdict.kind is VerdictKind.NO_RATIONAL_SOLUTION
        assert verdict.reason == NO_RATIONAL_REASON
        assert rational_solution_check(equation(3, 3, 1)).kind is VerdictKind.UNCLASSIFIED

    def test_rational_check_feeds_classify_notes(self):
        eq = equation(2, 2, 1, alpha="z")
        assert rational_solution_check(eq).reason in classify(eq).notes
        assert NO_RATIONAL_REASON not in classify(equation(2, 2, 1)).notes


class TestClassify:

    def test_unequal_powers(self):
        verdict = classify(equation(3, 2, 1))
        assert verdict.kind is VerdictKind.NO_TRANSCENDENTAL_SOLUTION
        assert verdict.theorem == "2.1"
        assert verdict.notes == ()

    def test_unequal_powers_with_non_constant_alpha(self):
        verdict = classify(equation(2, 3, 1, alpha="z^2"))
        assert verdict.hypotheses == GROWTH_HYPOTHESES
        assert NO_RATIONAL_REASON in verdict.notes

    def test_open_question(self):
        verdict = classify(equation(1, 2, 3))
        assert verdict.kind is VerdictKind.UNCLASSIFIED
        assert verdict.open_question == "Question 3"

    def test_linear_equation_unclassified(self):
        assert classify(equation(1, 1, 2, R="z", alpha="z^2")).kind is VerdictKind.UNCLASSIFIED

    def test_sine_families(self):
        verdict = classify(equation(2, 2, 1))
        assert verdict.kind is VerdictKind.FAMILIES
        assert verdict.family_tags == [FamilyTag.T23_A2, FamilyTag.T24_C, FamilyTag.T24_D]
        assert verdict.theorem == "2.3"
        assert FINITE_ORDER_NOTE in verdict.notes

    def test_cubic_linear_alpha(self):
        verdict = classify(equation(3, 3, 2, R="5", alpha="2*z + 1"))
        assert verdict.family_tags == [FamilyTag.T23_B, FamilyTag.T24_A]
        assert verdict.theorem == "2.3"
        assert NO_RATIONAL_REASON in verdict.notes

    def test_negative_degree_coefficient(self):
        verdict = classify(equation(2, 2, 1, R="-i/(2*z)"))
        assert verdict.family_tags == [FamilyTag.T24_E]
        assert verdict.theorem == "2.4"

    @pytest.mark.parametrize("eq", [
        equation(2, 2, 1, R="z"),
        equation(2, 2, 2),
    ])
    def test_no_family_fits(self, eq):
        verdict = classify(eq)
        assert verdict.kind is VerdictKind.NO_TRANSCENDENTAL_SOLUTION
        assert verdict.theorem == "2.4"
        assert verdict.families == ()

    def test_unknown_side_conditions_kept(self):
        verdict = classify(equation(2, 2, 1, R="z", Q="z", alpha="z"))
        descriptor = {d.tag: d for d in verdict.families}[FamilyTag.T24_A]
        assert all(c.holds is not False for c in descriptor.side_conditions)

    def test_to_dict_layout(self):
        data = classify(equation(2, 2, 1)).to_dict()
        assert list(data) == ["verdict", "reason", "theorem", "families", "hypotheses", "open_question", "notes"]
        assert data["families"][0]["tag"] == "T23_A2"


class TestKthRoots:

    def test_square_roots_of_minus_one(self):
        roots = kth_roots(-ONE, 2)
        assert [r.exact for r in roots] == [-I_UNIT, I_UNIT]
        assert [r.value for r in roots] == [-1j, 1j]

    def test_cube_roots_of_unity(self):
        roots = kth_roots(ONE, 3)
        assert len(roots) == 3
        assert roots[1].exact == ONE
        assert roots[0].exact is None and roots[2].exact is None
        for root in roots:
            assert abs(root.value ** 3 - 1) < 1e-12

    def test_constraint_polynomial(self):
        root = kth_roots(GaussianRational(0, 2), 4)[0]
        assert root.constraint == Poly.monomial(ONE, 4) - GaussianRational(0, 2)

    def test_zero_base(self):
        with pytest.raises(ZeroBase):
            kth_roots(GaussianRational(0), 3)

    def test_complex_base(self):
        roots = kth_roots(-1 + 0j, 2)
        assert [r.exact for r in roots] == [-I_UNIT, I_UNIT]

    def test_complex_pair_base(self):
        from_pair = kth_roots((0.0, 2.0), 4)
        exact = kth_roots(GaussianRational(0, 2), 4)
        assert [r.constraint for r in from_pair] == [r.constraint for r in exact]
        assert [r.value for r in from_pair] == pytest.approx([r.value for r in exact])

    def test_inexact_complex_base(self):
        w = complex(0.3, -0.7)
        roots = kth_roots(w, 5)
        assert len(roots) == 5
        for root in roots:
            assert abs(root.value ** 5 - w) < 1e-12


class TestConstantCoefficientFamilies:

    def test_t23_b_numeric_members(self, settings):
        members = construct_t23_B(3, 1, 1, 3, settings=settings)
        assert len(members) == 3
        for member in members:
            assert member.report.verified
            assert member.report.mode is VerificationMode.NUMERIC
            assert abs(member.candidate.bindings["c"] ** 3 - 0.5) < 1e-10

    def test_t23_b_unsatisfiable(self):
        with pytest.raises(NoSolutionInFamily):
            construct_t23_B(3, 1, -1, 3)

    def test_t23_b_needs_three(self):
        with pytest.raises(PreconditionViolated):
            construct_t23_B(2, 1, 1, 1)

    def test_t23_a1_numeric(self, settings):
        members = construct_t23_A1(1, 1, 2, settings=settings)
        assert len(members) == 2
        assert all(m.report.verified for m in members)

    def test_t23_a1_exact(self, settings):
        members = construct_t23_A1(1, GaussianRational(0, Fraction(5, 3)), 2, settings=settings)
        assert len(members) == 2
        assert all(m.report.mode is VerificationMode.EXACT for m in members)
        # d = 2 and d = -2, ordered by argument
        assert [m.candidate.exact for m in members] == [
            ExpPoly.term(GaussianRational(0, Fraction(-3, 4)), Z),
            ExpPoly.term(GaussianRational(0, Fraction(3, 4)), Z),
        ]

    @pytest.mark.parametrize("A", [I_UNIT, -I_UNIT])
    def test_t23_a1_degenerate(self, A):
        with pytest.raises(FamilyDegenerate):
            construct_t23_A1(1, A, 2)

    def test_t23_a2_sine(self, corpus_by_name, settings):
        members = construct_t23_A2(1, 1, settings=settings)
        assert len(members) == 1
        _, sine = corpus_by_name["sine"]
        assert members[0].candidate.exact == sine
        assert members[0].notes == ("a1 = 0 and k is odd",)

    def test_t23_a2_second_derivative(self, settings):
        members = construct_t23_A2(2, 1, settings=settings)
        assert len(members) == 4
        for member in members:
            assert member.report.mode is VerificationMode.NUMERIC
            assert member.report.verified

    def test_t23_a2_numeric_slope_in_member_dict(self, settings):
        for member in construct_t23_A2(2, 1, a2=3, settings=settings):
            a1 = member.candidate.bindings["u"] + member.candidate.bindings["v"]
            data = member.to_dict()
            assert data["equation"]["alpha"] == "3"
            assert data["equation"]["alpha_numeric"] == pytest.approx([[3.0, 0.0], [a1.real, a1.imag]])
            assert data["candidate"]["alpha"] == data["equation"]["alpha_numeric"]

    def test_exact_member_alpha_agrees(self, settings):
        data = construct_t23_A2(1, 1, settings=settings)[0].to_dict()
        assert data["equation"]["alpha"] == "0"
        assert data["equation"]["alpha_numeric"] == pytest.approx([[0.0, 0.0], [0.0, 0.0]])


class TestRationalCoefficientFamilies:

    def test_t24_a_examples(self, corpus_by_name, settings):
        for name, r1 in (
            ("rational_coefficient_half_exponent", "(z - 1)/(z + 1)"),
            ("cubic_exponent_corrected", "z + 1"),
        ):
            eq, f = corpus_by_name[name]
            member = construct_t24("T24_A", eq, {"R1": parse_ratfun(r1)}, settings)
            assert member.candidate.exact == f
            assert member.report.verified

    def test_t24_a_degree_balance_fails(self, corpus_by_name, settings):
        eq, _ = corpus_by_name["cubic_exponent_corrected"]
        with pytest.raises(SideConditionFailed) as info:
            construct_t24(FamilyTag.T24_A, eq, {"R1": RatFun.one()}, settings)
        assert info.value.condition == "degree balance"

    def test_t24_a_misprint_fails_identity(self, corpus_by_name, settings):
        eq, _ = corpus_by_name["cubic_exponent_corrected"]
        misprinted = FermatEquation(eq.m, eq.n, eq.k, eq.R, parse_ratfun(MISPRINTED_CUBIC_Q), eq.alpha)
        with pytest.raises(SideConditionFailed) as info:
            construct_t24(FamilyTag.T24_A, misprinted, {"R1": Z + 1}, settings)
        assert info.value.condition == "r1_identity"

    def test_t24_b_constant_factors(self, settings):
        eq = equation(2, 2, 1, R="5*i/3", alpha="2*z")
        member = construct_t24(FamilyTag.T24_B, eq, {"d": GaussianRational(2)}, settings)
        assert member.candidate.exact == ExpPoly.term(GaussianRational(0, Fraction(-3, 4)), Z)

    def test_t24_b_rational_factors(self, settings):
        Q1, Q2, d = RatFun(Z), RatFun(Poly.one(), Z), ONE
        half_alpha = Z
        S = (Q1 * (d * d) - Q2) / (2 * I_UNIT * d)
        T = ExpPoly.term(S, half_alpha).derivative().single_term()[2]
        R = ((Q1 * (d * d) + Q2) / (2 * d)) / T
        eq = FermatEquation(2, 2, 1, R, RatFun.one(), 2 * Z)
        member = construct_t24(FamilyTag.T24_B, eq, {"Q1": Q1, "d": d}, settings)
        assert member.report.verified

    def test_t24_b_wrong_coefficient_refuted(self, settings):
        eq = equation(2, 2, 1, alpha="2*z")
        with pytest.raises(VerificationFailed):
            construct_t24(FamilyTag.T24_B, eq, {"d": GaussianRational(2)}, settings)

    @pytest.mark.parametrize("params,alpha", [
        ({"d": GaussianRational(0)}, "2*z"),
        ({"d": GaussianRational(2)}, "0"),
    ])
    def test_t24_b_side_conditions(self, params, alpha, settings):
        with pytest.raises(SideConditionFailed):
            construct_t24(FamilyTag.T24_B, equation(2, 2, 1, alpha=alpha), params, settings)

    def test_t24_c_sine(self, corpus_by_name, settings):
        eq, sine = corpus_by_name["sine"]
        member = construct_t24(FamilyTag.T24_C, eq, {}, settings)
        assert member.candidate.exact == sine

    def test_t24_c_third_derivative_exact(self, settings):
        member = construct_t24(FamilyTag.T24_C, equation(2, 2, 3), {}, settings)
        assert member.report.mode is VerificationMode.EXACT
        assert member.candidate.bindings["a1"] == -1j

    def test_t24_c_third_derivative_numeric(self, settings):
        member = construct_t24(FamilyTag.T24_C, equation(2, 2, 3), {"a1_root": 1}, settings)
        assert member.report.mode is VerificationMode.NUMERIC
        assert member.report.verified

    def test_t24_c_even_order_with_constant_alpha(self, settings):
        with pytest.raises(SideConditionFailed):
            construct_t24(FamilyTag.T24_C, equation(2, 2, 2), {}, settings)

    def test_t24_d_rational_factor_pair(self, corpus_by_name, settings):
        eq, f = corpus_by_name["rational_factor_pair"]
        member = construct_t24(FamilyTag.T24_D, eq, {"a1": ONE, "Q1": RatFun(Z)}, settings)
        assert member.candidate.exact == f
        assert member.notes == ()

    def test_t24_d_constant_coefficient_note(self, corpus_by_name, settings):
        eq, sine = corpus_by_name["sine"]
        member = construct_t24(FamilyTag.T24_D, eq, {"a1": I_UNIT}, settings)
        assert member.candidate.exact == sine
        assert len(member.notes) == 1

    def test_t24_e_quadratic_exponent(self, corpus_by_name, settings):
        eq, f = corpus_by_name["quadratic_exponent_difference"]
        member = construct_t24(FamilyTag.T24_E, eq, {"P": Z ** 2}, settings)
        assert member.candidate.exact == f
        assert len(member.notes) == 1
        assert member.notes[0].startswith("k = 1: R differs from 1/P'")

    def test_t24_e_cosine(self, corpus_by_name, settings):
        eq, f = corpus_by_name["quadratic_exponent_cosine"]
        params = {"P": parse_poly("i*z^2/2"), "Q1": RatFun.coerce(I_UNIT)}
        member = construct_t24(FamilyTag.T24_E, eq, params, settings)
        assert member.candidate.exact == f

    def test_t24_e_nonconstant_factors(self, corpus_by_name, settings):
        eq, f = corpus_by_name["quadratic_exponent_nonconstant_factor"]
        params = {"P": Z ** 2, "Q1": RatFun(Poly.one(), Z), "Q2": RatFun(Z)}
        member = construct_t24(FamilyTag.T24_E, eq, params, settings)
        assert member.candidate.exact == f
        assert "k = 1 with non-constant Q1, Q2" in member.notes

    @pytest.mark.parametrize("R,P", [("-i/(2*z)", "3"), ("z", "z^2"), ("1/z^3", "z^2")])
    def test_t24_e_side_conditions(self, R, P, settings):
        with pytest.raises(SideConditionFailed):
            construct_t24(FamilyTag.T24_E, equation(2, 2, 1, R=R), {"P": parse_poly(P)}, settings)

    def test_t24_e_numeric_root_matches_alpha_constant(self, monkeypatch, settings):
        built = []
        monkeypatch.setattr(classify_module, "_finalize", lambda tag, eq, cand, notes, settings: built.append(cand))
        # t given numerically as i: (t + 1) P' = alpha' with P = z^2 + 1
        eq = equation(2, 2, 2, R="1/z^2", alpha="(1 + i)*z^2 + 3")
        construct_t24(FamilyTag.T24_E, eq, {"P": parse_poly("z^2 + 1"), "t": 1j}, settings)
        first, second = built[0].build().terms
        exponent = first.exponent[:3] + second.exponent[:3]
        assert list(exponent) == pytest.approx([3, 0, 1 + 1j])

    def test_t24_e_numeric_root_rejects_wrong_shift(self, settings):
        eq = equation(2, 2, 2, R="1/z^2", alpha="(1 + i)*z^2 + 3")
        with pytest.raises(SideConditionFailed, match="alpha\\(0\\)"):
            construct_t24(FamilyTag.T24_E, eq, {"P": parse_poly("z^2 + 1"), "t": 1j, "c": 3}, settings)

    def test_rejects_constant_coefficient_tags(self, settings):
        with pytest.raises(PreconditionViolated):
            construct_t24("T23_B", equation(3, 3, 1, alpha="z"), {}, settings)
