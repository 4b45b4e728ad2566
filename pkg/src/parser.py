"""
Expression grammar, recursive-descent parser and canonical printer.

Grammar (whitespace-insensitive)::

    expr   := term (("+"|"-") term)* ;
    term   := unary (("*"|"/") unary)* ;
    unary  := "-" unary | factor ;
    factor := base ("^" UINT)? ;
    base   := "z" | "i" | UINT | "(" expr ")" | "exp" "(" expr ")" ;

Values are built while parsing and always reduced to the smallest class
(Poly, RatFun, ExpPoly) that holds them.
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Union

from .algebra import I_UNIT, ONE, GaussianRational, Poly, RatFun
from .errors import LexError, NonPolynomialExponent, ParseError
from .exppoly import ExpPoly

Value = Union[Poly, RatFun, ExpPoly]


class TokenKind(Enum):
    INT = "INT"
    IDENT_Z = "IDENT_Z"
    IDENT_I = "IDENT_I"
    EXP = "EXP"
    PLUS = "PLUS"
    MINUS = "MINUS"
    STAR = "STAR"
    SLASH = "SLASH"
    CARET = "CARET"
    LPAREN = "LPAREN"
    RPAREN = "RPAREN"
    EOF = "EOF"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    start: int
    end: int


_TOKEN_RE = re.compile(
    r"(?P<WS>[ \t\r\n]+)"
    r"|(?P<INT>[0-9]+)"
    r"|(?P<EXP>exp)"
    r"|(?P<IDENT_Z>z)"
    r"|(?P<IDENT_I>i)"
    r"|(?P<PLUS>\+)"
    r"|(?P<MINUS>-)"
    r"|(?P<STAR>\*)"
    r"|(?P<SLASH>/)"
    r"|(?P<CARET>\^)"
    r"|(?P<LPAREN>\()"
    r"|(?P<RPAREN>\))"
)


def tokenize(text: str) -> List[Token]:
    """
    Split an expression into tokens.

    Args:
        text: Expression source

    Returns:
        Tokens with byte-offset spans, terminated by EOF

    Raises:
        LexError: On any character outside the grammar
    """
    tokens: List[Token] = []
    pos = 0
    byte_pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise LexError(byte_pos, text[pos])
        lexeme = match.group()
        # every matched lexeme is ASCII, so byte length equals char length
        if match.lastgroup != "WS":
            tokens.append(Token(TokenKind(match.lastgroup), lexeme, byte_pos, byte_pos + len(lexeme)))
        pos = match.end()
        byte_pos += len(lexeme)
    tokens.append(Token(TokenKind.EOF, "", byte_pos, byte_pos))
    return tokens


class ExprKind(Enum):
    POLY = "poly"
    RATFUN = "ratfun"
    EXPPOLY = "exppoly"


def _minimal(value: Value) -> Value:
    if isinstance(value, ExpPoly):
        ratfun = value.to_ratfun()
        if ratfun is None:
            return value
        value = ratfun
    if isinstance(value, RatFun):
        return value.as_poly() if value.is_polynomial() else value
    return value


@dataclass(frozen=True)
class ParsedExpr:
    """A parsed value tagged with the smallest class containing it."""
    kind: ExprKind
    value: Value

    @classmethod
    def of(cls, value: Union[Value, GaussianRational, int]) -> "ParsedExpr":
        if isinstance(value, (GaussianRational, int)):
            value = Poly.constant(value)
        value = _minimal(value)
        if isinstance(value, Poly):
            return cls(ExprKind.POLY, value)
        if isinstance(value, RatFun):
            return cls(ExprKind.RATFUN, value)
        return cls(ExprKind.EXPPOLY, value)

    def as_poly(self) -> Poly:
        if self.kind is not ExprKind.POLY:
            raise ValueError(f"expected a polynomial, got {self.kind.value}")
        return self.value

    def as_ratfun(self) -> RatFun:
        if self.kind is ExprKind.EXPPOLY:
            raise ValueError("expected a rational function, got an exponential polynomial")
        return RatFun.coerce(self.value)

    def as_exppoly(self) -> ExpPoly:
        if self.kind is ExprKind.EXPPOLY:
            return self.value
        return ExpPoly.term(RatFun.coerce(self.value))

    def as_gaussian(self) -> GaussianRational:
        poly = self.as_poly()
        if not poly.is_constant():
            raise ValueError("expected a constant")
        return poly.constant_term


class _Parser:
    """Recursive-descent parser over a token list."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind is not TokenKind.EOF:
            self.index += 1
        return token

    def expect(self, kind: TokenKind) -> Token:
        token = self.peek()
        if token.kind is not kind:
            raise ParseError(token.start, (kind.value,))
        return self.advance()

    def parse(self) -> Value:
        value = self.expr()
        self.expect(TokenKind.EOF)
        return value

    def expr(self) -> Value:
        value = self.term()
        while self.peek().kind in (TokenKind.PLUS, TokenKind.MINUS):
            op = self.advance()
            rhs = self.term()
            value = _lift_add(value, rhs) if op.kind is TokenKind.PLUS else _lift_add(value, _negate(rhs))
        return value

    def term(self) -> Value:
        value = self.unary()
        while self.peek().kind in (TokenKind.STAR, TokenKind.SLASH):
            op = self.advance()
            rhs_start = self.peek().start
            rhs = self.unary()
            if op.kind is TokenKind.STAR:
                value = _lift_mul(value, rhs)
            else:
                value = _divide(value, rhs, rhs_start)
        return value

    def unary(self) -> Value:
        if self.peek().kind is TokenKind.MINUS:
            self.advance()
            return _negate(self.unary())
        return self.factor()

    def factor(self) -> Value:
        value = self.base()
        if self.peek().kind is TokenKind.CARET:
            self.advance()
            exponent = self.expect(TokenKind.INT)
            value = _minimal(value ** int(exponent.text))
        return value

    def base(self) -> Value:
        token = self.peek()
        if token.kind is TokenKind.IDENT_Z:
            self.advance()
            return Poly.z()
        if token.kind is TokenKind.IDENT_I:
            self.advance()
            return Poly.constant(I_UNIT)
        if token.kind is TokenKind.INT:
            self.advance()
            return Poly.constant(int(token.text))
        if token.kind is TokenKind.LPAREN:
            self.advance()
            value = self.expr()
            self.expect(TokenKind.RPAREN)
            return value
        if token.kind is TokenKind.EXP:
            self.advance()
            self.expect(TokenKind.LPAREN)
            arg_start = self.peek().start
            arg = self.expr()
            self.expect(TokenKind.RPAREN)
            if not isinstance(arg, Poly):
                raise NonPolynomialExponent(arg_start)
            return _minimal(ExpPoly.term(ONE, arg))
        raise ParseError(token.start, ("EXP", "IDENT_I", "IDENT_Z", "INT", "LPAREN", "MINUS"))


def _rank(value: Value) -> int:
    return {Poly: 0, RatFun: 1, ExpPoly: 2}[type(value)]


def _lift(value: Value, rank: int) -> Value:
    if rank == 0:
        return value
    if rank == 1:
        return RatFun.coerce(value)
    return ExpPoly.coerce(value)


def _negate(value: Value) -> Value:
    return -value


def _lift_add(a: Value, b: Value) -> Value:
    rank = max(_rank(a), _rank(b))
    return _minimal(_lift(a, rank) + _lift(b, rank))


def _lift_mul(a: Value, b: Value) -> Value:
    rank = max(_rank(a), _rank(b))
    return _minimal(_lift(a, rank) * _lift(b, rank))


def _divide(a: Value, b: Value, position: int) -> Value:
    if isinstance(b, ExpPoly):
        single = b.single_term()
        if single is None:
            raise ParseError(position, ("rational divisor",), f"cannot divide by a sum of exponentials (offset {position})")
        exponent, cshift, ratfun = single
        b_inverse = ExpPoly.term(RatFun.one() / ratfun, -(exponent + cshift))
        return _minimal(ExpPoly.coerce(a) * b_inverse)
    divisor = RatFun.coerce(b)
    if divisor.is_zero():
        raise ParseError(position, ("nonzero divisor",), f"division by zero (offset {position})")
    if isinstance(a, ExpPoly):
        return _minimal(a.scale(RatFun.one() / divisor))
    return _minimal(RatFun.coerce(a) / divisor)


def parse(text: str) -> ParsedExpr:
    """
    Parse an expression into its minimal class.

    Args:
        text: Expression in the module grammar

    Returns:
        ParsedExpr tagged POLY, RATFUN or EXPPOLY
    """
    return ParsedExpr.of(_Parser(text).parse())


def parse_poly(text: str) -> Poly:
    return parse(text).as_poly()


def parse_ratfun(text: str) -> RatFun:
    return parse(text).as_ratfun()


def parse_exppoly(text: str) -> ExpPoly:
    return parse(text).as_exppoly()


def parse_gaussian(text: str) -> GaussianRational:
    return parse(text).as_gaussian()


# Printer


def _monomial_text(coeff: GaussianRational, degree: int) -> str:
    zpart = "z" if degree == 1 else f"z^{degree}"
    if coeff == ONE:
        return zpart
    if coeff == -ONE:
        return "-" + zpart
    if coeff.is_real or coeff.re == 0:
        return f"{coeff.to_text()}*{zpart}"
    return f"({coeff.to_text()})*{zpart}"


def _poly_pieces(p: Poly) -> List[str]:
    pieces = []
    for degree in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[degree]
        if c.is_zero():
            continue
        if degree > 0:
            pieces.append(_monomial_text(c, degree))
        elif c.re != 0 and c.im != 0:
            pieces.append(GaussianRational(c.re).to_text())
            pieces.append(GaussianRational(0, c.im).to_text())
        else:
            pieces.append(c.to_text())
    return pieces


def _join(pieces: List[str]) -> str:
    if not pieces:
        return "0"
    out = pieces[0]
    for piece in pieces[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out


def _format_poly(p: Poly) -> str:
    return _join(_poly_pieces(p))


def _format_ratfun(r: RatFun) -> str:
    if r.is_polynomial():
        return _format_poly(r.num)
    num = _format_poly(r.num)
    if len(_poly_pieces(r.num)) > 1:
        num = f"({num})"
    den = _format_poly(r.den)
    if len(_poly_pieces(r.den)) > 1:
        den = f"({den})"
    return f"{num}/{den}"


def _format_exppoly(e: ExpPoly) -> str:
    pieces = []
    for exponent, cshift, ratfun in e.flat_terms():
        argument = exponent + cshift
        if argument.is_zero():
            pieces.append(_format_ratfun(ratfun))
            continue
        exp_text = f"exp({_format_poly(argument)})"
        if ratfun == RatFun.one():
            pieces.append(exp_text)
        elif ratfun == -RatFun.one():
            pieces.append("-" + exp_text)
        elif ratfun.is_polynomial() and len(_poly_pieces(ratfun.num)) == 1:
            pieces.append(f"{_format_ratfun(ratfun)}*{exp_text}")
        else:
            pieces.append(f"({_format_ratfun(ratfun)})*{exp_text}")
    return _join(pieces)


def print_canonical(e: Union[ParsedExpr, Value, GaussianRational]) -> str:
    """
    Deterministic text form; parse(print_canonical(v)) rebuilds v.

    Args:
        e: Parsed expression or a raw Poly / RatFun / ExpPoly / constant

    Returns:
        Canonical text
    """
    value = e.value if isinstance(e, ParsedExpr) else e
    if isinstance(value, GaussianRational):
        value = Poly.constant(value)
    if isinstance(value, Poly):
        return _format_poly(value)
    if isinstance(value, RatFun):
        return _format_ratfun(value)
    return _format_exppoly(value)
