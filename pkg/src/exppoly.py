"""
Exponential polynomials sum_j R_j(z) * exp(c_j) * e^{P_j(z)}.

Every exponent key P is stored with a zero constant term; constants are
folded into formal factors exp(c), c in Q(i), kept in an ExpCoeff. Zero
testing is therefore structural: distinct non-constant exponents are
linearly independent over the rational functions, and for a fixed exponent
the numbers exp(c) over distinct Gaussian-rational c are linearly
independent over the algebraic numbers (Lindemann-Weierstrass). An
ExpPoly is zero iff its map is empty.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Mapping, Optional, Tuple, Union

import numpy as np

from .algebra import ONE, ZERO, GaussianRational, Poly, RatFun, ScalarLike
from .errors import OverflowAtSamplePoint

CoeffLike = Union[RatFun, Poly, ScalarLike]


def _items(terms) -> list:
    if isinstance(terms, Mapping):
        return list(terms.items())
    return list(terms)


@dataclass(frozen=True)
class ExpCoeff:
    """Sum of RatFun * exp(c) over distinct constant shifts c."""
    terms: Tuple[Tuple[GaussianRational, RatFun], ...] = ()

    def __post_init__(self):
        merged: Dict[GaussianRational, RatFun] = {}
        for cshift, coeff in _items(self.terms):
            cshift = GaussianRational.coerce(cshift)
            merged[cshift] = merged.get(cshift, RatFun.zero()) + RatFun.coerce(coeff)
        items = sorted(
            ((c, r) for c, r in merged.items() if not r.is_zero()),
            key=lambda item: item[0].sort_key(),
        )
        object.__setattr__(self, "terms", tuple(items))

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> Dict[GaussianRational, RatFun]:
        return dict(self.terms)

    def shift(self, offset: GaussianRational) -> "ExpCoeff":
        return ExpCoeff(tuple((c + offset, r) for c, r in self.terms))

    def map(self, fn: Callable[[RatFun], RatFun]) -> "ExpCoeff":
        return ExpCoeff(tuple((c, fn(r)) for c, r in self.terms))

    def __neg__(self) -> "ExpCoeff":
        return self.map(lambda r: -r)

    def __add__(self, other: "ExpCoeff") -> "ExpCoeff":
        return ExpCoeff(self.terms + other.terms)

    def __sub__(self, other: "ExpCoeff") -> "ExpCoeff":
        return self + (-other)

    def __mul__(self, other: "ExpCoeff") -> "ExpCoeff":
        return ExpCoeff(tuple(
            (c1 + c2, r1 * r2) for c1, r1 in self.terms for c2, r2 in other.terms
        ))

    def eval(self, z: complex, pole_tol: float = 1e-12) -> complex:
        return sum(
            (r.eval(z, pole_tol) * complex(np.exp(c.to_complex())) for c, r in self.terms),
            0j,
        )


@dataclass(frozen=True)
class ExpPoly:
    """Finite sum of ExpCoeff * e^{P} keyed by exponent polynomials with zero constant term."""
    terms: Tuple[Tuple[Poly, ExpCoeff], ...] = ()

    def __post_init__(self):
        merged: Dict[Poly, ExpCoeff] = {}
        for exponent, coeff in _items(self.terms):
            exponent = Poly.coerce(exponent)
            if not isinstance(coeff, ExpCoeff):
                coeff = ExpCoeff(((ZERO, RatFun.coerce(coeff)),))
            offset = exponent.constant_term
            if not offset.is_zero():
                exponent, coeff = exponent.without_constant(), coeff.shift(offset)
            merged[exponent] = merged.get(exponent, ExpCoeff()) + coeff
        items = sorted(
            ((p, c) for p, c in merged.items() if not c.is_zero()),
            key=lambda item: item[0].sort_key(),
        )
        object.__setattr__(self, "terms", tuple(items))

    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls(())

    @classmethod
    def term(cls, coeff: CoeffLike, exponent: Union[Poly, ScalarLike] = ZERO) -> "ExpPoly":
        """Single term coeff * e^{exponent}; the exponent's constant is split off."""
        return cls(((Poly.coerce(exponent), RatFun.coerce(coeff)),))

    @classmethod
    def coerce(cls, value: Union["ExpPoly", CoeffLike]) -> "ExpPoly":
        if isinstance(value, ExpPoly):
            return value
        return cls.term(value)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def as_dict(self) -> Dict[Poly, ExpCoeff]:
        return dict(self.terms)

    def flat_terms(self) -> Iterator[Tuple[Poly, GaussianRational, RatFun]]:
        """(exponent, cshift, coefficient) triples in canonical order."""
        for exponent, coeff in self.terms:
            for cshift, ratfun in coeff.terms:
                yield exponent, cshift, ratfun

    def term_count(self) -> int:
        return sum(len(coeff.terms) for _, coeff in self.terms)

    def single_term(self) -> Optional[Tuple[Poly, GaussianRational, RatFun]]:
        """The only (exponent, cshift, coefficient) triple, or None."""
        if self.term_count() != 1:
            return None
        return next(self.flat_terms())

    def to_ratfun(self) -> Optional[RatFun]:
        """The value as a rational function when no exponential factor remains."""
        if self.is_zero():
            return RatFun.zero()
        single = self.single_term()
        if single is None:
            return None
        exponent, cshift, ratfun = single
        if exponent.is_zero() and cshift.is_zero():
            return ratfun
        return None

    def scale(self, factor: CoeffLike) -> "ExpPoly":
        factor = RatFun.coerce(factor)
        return ExpPoly(tuple((p, c.map(lambda r: r * factor)) for p, c in self.terms))

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(tuple((p, -c) for p, c in self.terms))

    def __add__(self, other):
        try:
            other = ExpPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return ExpPoly(self.terms + other.terms)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = ExpPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = ExpPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = ExpPoly.coerce(other)
        except TypeError:
            return NotImplemented
        products: Dict[Poly, ExpCoeff] = {}
        for p1, c1 in self.terms:
            for p2, c2 in other.terms:
                key = p1 + p2
                products[key] = products.get(key, ExpCoeff()) + c1 * c2
        return ExpPoly(products)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ExpPoly":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result, base = ExpPoly.term(ONE), self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def derivative(self, k: int = 1) -> "ExpPoly":
        """k-th derivative by iterating D[R exp(c) e^P] = (R' + R P') exp(c) e^P."""
        if k < 0:
            raise ValueError("derivative order must be non-negative")
        result = self
        for _ in range(k):
            result = ExpPoly(tuple(
                (p, c.map(lambda r, dp=RatFun(p.derivative()): r.derivative() + r * dp))
                for p, c in result.terms
            ))
        return result

    def eval(self, z: complex, pole_tol: float = 1e-12, overflow: float = 700.0) -> complex:
        total = 0j
        for exponent, coeff in self.terms:
            e = exponent.eval_complex(z)
            if abs(e) > overflow:
                raise OverflowAtSamplePoint(z, e)
            total += coeff.eval(z, pole_tol) * complex(np.exp(e))
        return total


def ep_from_term(coeff: CoeffLike, exponent: Poly) -> ExpPoly:
    return ExpPoly.term(coeff, exponent)


def ep_arith(a: ExpPoly, b: ExpPoly, op: str) -> ExpPoly:
    """Ring operations on exponential polynomials: 'add', 'sub', 'mul'."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation: {op}")


def ep_pow(a: ExpPoly, n: int) -> ExpPoly:
    if n < 1:
        raise ValueError("exponent must be a positive integer")
    return a ** n


def ep_derivative(a: ExpPoly, k: int) -> ExpPoly:
    if k < 1:
        raise ValueError("derivative order must be a positive integer")
    return a.derivative(k)


def ep_is_zero(a: ExpPoly) -> bool:
    return a.is_zero()


def ep_eval(a: ExpPoly, z: complex, pole_tol: float = 1e-12, overflow: float = 700.0) -> complex:
    return a.eval(z, pole_tol, overflow)
