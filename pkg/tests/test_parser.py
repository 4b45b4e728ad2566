"""Tests for the expression tokenizer, parser and canonical printer."""

from fractions import Fraction

import pytest

from src.algebra import I_UNIT, ONE, GaussianRational, Poly, RatFun
from src.errors import LexError, NonPolynomialExponent, ParseError
from src.exppoly import ExpPoly
from src.parser import ExprKind, TokenKind, parse, parse_exppoly, parse_gaussian, parse_poly, print_canonical, tokenize

Z = Poly.z()


class TestTokenizer:

    def test_token_kinds_and_offsets(self):
        tokens = tokenize("exp(z^2) - i")
        assert [t.kind for t in tokens] == [
            TokenKind.EXP, TokenKind.LPAREN, TokenKind.IDENT_Z, TokenKind.CARET, TokenKind.INT,
            TokenKind.RPAREN, TokenKind.MINUS, TokenKind.IDENT_I, TokenKind.EOF,
        ]
        assert tokens[-2].start == 11
        assert tokens[-1].start == 12

    def test_unknown_character(self):
        with pytest.raises(LexError) as info:
            tokenize("z + $")
        assert info.value.position == 4
        assert info.value.char == "$"


class TestParse:

    @pytest.mark.parametrize("text,kind", [
        ("z^2 + 1", ExprKind.POLY),
        ("(z^2 - 1)/(z - 1)", ExprKind.POLY),
        ("(z^2 + 1)/(z + 1)", ExprKind.RATFUN),
        ("exp(0)", ExprKind.POLY),
        ("exp(1)", ExprKind.EXPPOLY),
        ("z*exp(z) - exp(-z)/z", ExprKind.EXPPOLY),
    ])
    def test_minimal_class(self, text, kind):
        assert parse(text).kind is kind

    def test_precedence(self):
        assert parse_poly("-z^2") == -(Z ** 2)
        assert parse_poly("2*z^3 - z/2") == Poly((0, GaussianRational(-1) / 2, 0, 2))
        assert parse_poly("(1 + i)^2") == Poly.constant(GaussianRational(0, 2))

    def test_whitespace_insensitive(self):
        assert parse_exppoly("exp( z )*( z+1 )") == parse_exppoly("exp(z)*(z + 1)")

    def test_division_by_single_exponential(self):
        assert parse_exppoly("1/exp(z^2)") == ExpPoly.term(ONE, -(Z ** 2))

    def test_gaussian_constant(self):
        assert parse_gaussian("-i/2") == GaussianRational(0, Fraction(-1, 2))
        with pytest.raises(ValueError):
            parse_gaussian("z")

    @pytest.mark.parametrize("text,position", [
        ("z +", 3),
        ("(z", 2),
        ("z^", 2),
        ("z^z", 2),
        ("z )", 2),
        ("1/0", 2),
        ("exp(z)/(exp(z) + 1)", 7),
    ])
    def test_parse_error_offset(self, text, position):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.position == position

    def test_expected_tokens_reported(self):
        with pytest.raises(ParseError) as info:
            parse("(z")
        assert info.value.expected == ("RPAREN",)

    @pytest.mark.parametrize("text,position", [
        ("exp(1/z)", 4),
        ("z*exp(exp(z))", 6),
    ])
    def test_non_polynomial_exponent(self, text, position):
        with pytest.raises(NonPolynomialExponent) as info:
            parse(text)
        assert info.value.position == position


class TestCanonicalPrinter:

    @pytest.mark.parametrize("value,text", [
        (Z ** 2 + 1, "z^2 + 1"),
        (Poly((GaussianRational(0, -1), 0, GaussianRational(1) / 2)), "1/2*z^2 - i"),
        (Poly((GaussianRational(1, 1),)), "1 + i"),
        (RatFun(Z ** 2 + 1, Z + 1), "(z^2 + 1)/(z + 1)"),
        (RatFun(Poly.one(), Z ** 3), "1/z^3"),
        (ExpPoly.term(ONE, I_UNIT * Z) - ExpPoly.term(ONE, -I_UNIT * Z), "-exp(-i*z) + exp(i*z)"),
    ])
    def test_printed_form(self, value, text):
        assert print_canonical(value) == text

    def test_printing_is_idempotent(self):
        text = "(z - 1)/(z + 1)*exp(z/2) + i*exp(1 + z^2)"
        once = print_canonical(parse(text))
        assert print_canonical(parse(once)) == once

    def test_poly_round_trip(self, random_algebra):
        for _ in range(500):
            p = random_algebra.poly(5)
            assert parse_poly(print_canonical(p)) == p

    def test_ratfun_round_trip(self, random_algebra):
        for _ in range(500):
            r = random_algebra.ratfun(4)
            assert parse(print_canonical(r)).as_ratfun() == r

    def test_exppoly_round_trip(self, random_algebra):
        for _ in range(500):
            f = random_algebra.exppoly(3)
            assert parse_exppoly(print_canonical(f)) == f
