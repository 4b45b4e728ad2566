"""Tests for exact arithmetic over Q(i)."""

from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from src.algebra import (
    I_UNIT,
    NEG_INFINITY,
    ONE,
    ZERO,
    GaussianRational,
    Poly,
    RatFun,
    gr_arith,
    poly_arith,
    poly_gcd,
    ratfun_arith,
    ratfun_deg,
    ratfun_eval,
    ratfun_normalize,
    zeros_have_multiplicity_below,
)
from src.errors import DivisionByZero, PoleAtSamplePoint
from src.parser import parse_ratfun

Z = Poly.z()


def to_sympy(r: RatFun) -> sp.Expr:
    z = sp.Symbol("z")

    def poly_expr(p: Poly) -> sp.Expr:
        return sum(
            (sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)) * z ** i
            for i, c in enumerate(p.coeffs)
        )

    return poly_expr(r.num) / poly_expr(r.den)


class TestGaussianRational:

    def test_field_operations(self):
        a = GaussianRational(1, 2)
        b = GaussianRational(Fraction(1, 2), -1)
        assert a + b == GaussianRational(Fraction(3, 2), 1)
        assert a * b == GaussianRational(Fraction(5, 2), 0)
        assert (a / b) * b == a
        assert I_UNIT * I_UNIT == -ONE

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            gr_arith(ONE, ZERO, "div")

    def test_division_by_zero_is_zero_division_error(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_negative_power(self):
        assert GaussianRational(0, 2) ** -2 == GaussianRational(Fraction(-1, 4))

    @pytest.mark.parametrize("value,text", [
        (GaussianRational(Fraction(1, 2)), "1/2"),
        (I_UNIT, "i"),
        (GaussianRational(0, Fraction(-1, 2)), "-1/2*i"),
        (GaussianRational(1, -1), "1 - i"),
    ])
    def test_to_text(self, value, text):
        assert value.to_text() == text


class TestPoly:

    def test_trailing_zeros_trimmed(self):
        assert Poly((1, 2, 0, 0)).degree == 1
        assert Poly((0, 0)).degree is NEG_INFINITY

    def test_divmod_identity(self, random_algebra):
        for _ in range(100):
            p = random_algebra.poly(5)
            q = random_algebra.poly(3, nonzero=True)
            quot, rem = poly_arith(p, q, "divmod")
            assert quot * q + rem == p
            assert rem.is_zero() or rem.degree < q.degree

    def test_gcd_of_shared_factor(self):
        p = (Z - 1) ** 2 * (Z + 2)
        q = (Z - 1) * (Z + 3)
        assert poly_gcd(p, q) == Z - 1

    def test_gcd_gaussian_factor(self):
        p = (Z - I_UNIT) * (Z + 1)
        q = (Z - I_UNIT) * (Z - 1)
        assert poly_arith(p, q, "gcd") == Z - I_UNIT

    def test_gcd_with_zero_is_monic(self):
        assert poly_gcd(Poly((2, 4)), Poly.zero()) == Poly((Fraction(1, 2), 1))

    def test_derivative(self):
        assert (Z ** 3 + 2 * Z).derivative() == Poly((2, 0, 3))

    def test_exact_evaluation(self):
        assert (Z ** 2 + 1)(I_UNIT) == ZERO


class TestRatFun:

    def test_normalised_representation(self):
        r = RatFun(Z ** 2 - 1, Z - 1)
        assert r == RatFun(Z + 1)
        assert r.is_polynomial()

    def test_monic_denominator(self):
        r = RatFun(Poly((0, 2)), Poly((2, 2)))
        assert r.den == Z + 1
        assert r.num == Z

    def test_zero_denominator(self):
        with pytest.raises(DivisionByZero):
            RatFun(Z, Poly.zero())

    def test_degree_examples(self):
        assert ratfun_deg(parse_ratfun("(z^2 + 1)/(z + 1)")) == 1
        assert ratfun_deg(RatFun.zero()) is NEG_INFINITY
        assert ratfun_deg(RatFun.coerce(5)) == 0

    def test_logarithmic_derivative_of_z(self):
        r = RatFun(Z)
        quotient = r.derivative() / r
        assert quotient == RatFun(Poly.one(), Z)
        assert quotient.deg == -1

    def test_pole_at_sample_point(self):
        with pytest.raises(PoleAtSamplePoint):
            RatFun(Poly.one(), Z - 1).eval(1 + 0j)

    def test_arith_matches_sympy(self, random_algebra):
        for _ in range(30):
            r = random_algebra.ratfun(2)
            s = random_algebra.ratfun(2, nonzero=True)
            for op, expected in (
                ("add", to_sympy(r) + to_sympy(s)),
                ("mul", to_sympy(r) * to_sympy(s)),
                ("div", to_sympy(r) / to_sympy(s)),
            ):
                assert sp.simplify(to_sympy(ratfun_arith(r, s, op)) - expected) == 0

    def test_derivative_matches_sympy(self, random_algebra):
        z = sp.Symbol("z")
        for _ in range(30):
            r = random_algebra.ratfun(3)
            assert sp.simplify(to_sympy(ratfun_arith(r, None, "derivative")) - sp.diff(to_sympy(r), z)) == 0

    @pytest.mark.parametrize("op", ["add", "sub", "mul", "div", "derivative"])
    def test_results_stay_reduced(self, random_algebra, op):
        for _ in range(100):
            r = random_algebra.ratfun()
            s = random_algebra.ratfun(nonzero=True)
            result = ratfun_arith(r, s, op)
            assert poly_gcd(result.num, result.den) == Poly.one()
            assert result.den.leading == ONE

    def test_normalize_idempotent(self, random_algebra):
        for _ in range(200):
            r = ratfun_normalize(random_algebra.poly(), random_algebra.poly(nonzero=True))
            again = ratfun_normalize(r.num, r.den)
            assert again == r
            assert (again.num, again.den) == (r.num, r.den)

    def test_eval_is_multiplicative(self, random_algebra):
        rng = np.random.default_rng(11)
        checked = 0
        for _ in range(300):
            r, s = random_algebra.ratfun(), random_algebra.ratfun()
            z = complex(rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
            # keep clear of poles of either factor
            if min(abs(np.polynomial.polynomial.polyval(z, q.den.to_numpy())) for q in (r, s)) < 0.05:
                continue
            product = ratfun_eval(r * s, z)
            expected = ratfun_eval(r, z) * ratfun_eval(s, z)
            assert abs(product - expected) <= 1e-10 * max(1.0, abs(expected))
            checked += 1
        assert checked > 200


class TestDegreeRules:
    """Degree calculus on 500 random rational functions."""

    @pytest.fixture
    def pairs(self, random_algebra):
        return [(random_algebra.ratfun(), random_algebra.ratfun()) for _ in range(500)]

    def test_product_and_quotient(self, pairs):
        for r, s in pairs:
            if r.is_zero() or s.is_zero():
                continue
            assert (r * s).deg == r.deg + s.deg
            assert (r / s).deg == r.deg - s.deg

    def test_derivative_lowers_degree(self, pairs):
        for r, _ in pairs:
            if r.is_zero():
                continue
            assert r.derivative().deg <= r.deg - 1
            assert (r.derivative() / r).deg <= -1

    def test_sum_bounded_by_max(self, pairs):
        for r, s in pairs:
            assert (r + s).deg <= max(r.deg, s.deg, key=lambda d: float("-inf") if d is NEG_INFINITY else d)

    def test_neg_infinity_absorbs(self):
        assert NEG_INFINITY + 3 is NEG_INFINITY
        assert 2 * NEG_INFINITY is NEG_INFINITY
        assert NEG_INFINITY < -100
        assert not (NEG_INFINITY > 0)


class TestZeroMultiplicity:

    @pytest.mark.parametrize("poly,k,expected", [
        (Z ** 2 * (Z - 1), 2, False),
        (Z ** 2 * (Z - 1), 3, True),
        (Z * (Z - 1), 2, True),
        (Z, 1, False),
        (Poly.constant(3), 1, True),
    ])
    def test_predicate(self, poly, k, expected):
        assert zeros_have_multiplicity_below(poly, k) is expected
