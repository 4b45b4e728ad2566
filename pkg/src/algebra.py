"""Exact arithmetic over Q(i): Gaussian rationals, polynomials and rational functions."""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Optional, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DivisionByZero, PoleAtSamplePoint


class Degree(Enum):
    """Degree of the zero polynomial / zero rational function."""
    NEG_INFINITY = "-inf"

    def __lt__(self, other):
        if isinstance(other, Degree):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (Degree, int)):
            return True
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (Degree, int)):
            return False
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, Degree):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (Degree, int)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        raise ArithmeticError("difference of two infinite degrees is undefined")

    def __rsub__(self, other):
        raise ArithmeticError("cannot subtract the degree of zero")

    def __mul__(self, other):
        if isinstance(other, int) and other > 0:
            return self
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "-inf"


NEG_INFINITY = Degree.NEG_INFINITY
DegreeValue = Union[int, Degree]


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number re + im*i with rational parts."""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: "ScalarLike") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        norm = other.norm()
        if norm == 0:
            raise DivisionByZero("division by zero in Q(i)")
        num = self * other.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base, exponent = ONE / self, -exponent
        result = ONE
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def to_text(self) -> str:
        """Canonical text accepted by the parser."""
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}*i"
        if self.re == 0:
            return imag
        if imag.startswith("-"):
            return f"{self.re} - {imag[1:]}"
        return f"{self.re} + {imag}"

    def __str__(self) -> str:
        return self.to_text()


ScalarLike = Union[int, Fraction, GaussianRational]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def _gaussian_int_gcd(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    """Euclid's algorithm in Z[i]; inputs must have integer parts."""
    while not b.is_zero():
        q = a / b
        q = GaussianRational(round(q.re), round(q.im))
        a, b = b, a - q * b
    return a


def gr_arith(a: GaussianRational, b: GaussianRational, op: str) -> GaussianRational:
    """
    Field arithmetic in Q(i).

    Args:
        a: Left operand
        b: Right operand
        op: One of 'add', 'sub', 'mul', 'div'

    Returns:
        Reduced result
    """
    operations = {
        "add": lambda x, y: x + y,
        "sub": lambda x, y: x - y,
        "mul": lambda x, y: x * y,
        "div": lambda x, y: x / y,
    }
    if op not in operations:
        raise ValueError(f"unknown operation: {op}")
    return operations[op](GaussianRational.coerce(a), GaussianRational.coerce(b))


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial over Q(i), coefficients from degree 0 upward."""
    coeffs: Tuple[GaussianRational, ...] = ()

    def __post_init__(self):
        cs = [GaussianRational.coerce(c) for c in self.coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((ONE,))

    @classmethod
    def constant(cls, value: ScalarLike) -> "Poly":
        return cls((GaussianRational.coerce(value),))

    @classmethod
    def z(cls) -> "Poly":
        return cls((ZERO, ONE))

    @classmethod
    def monomial(cls, coeff: ScalarLike, degree: int) -> "Poly":
        return cls((ZERO,) * degree + (GaussianRational.coerce(coeff),))

    @classmethod
    def coerce(cls, value: Union["Poly", ScalarLike]) -> "Poly":
        if isinstance(value, Poly):
            return value
        return cls.constant(value)

    @property
    def degree(self) -> DegreeValue:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    @property
    def constant_term(self) -> GaussianRational:
        return self.coeffs[0] if self.coeffs else ZERO

    def coeff(self, degree: int) -> GaussianRational:
        return self.coeffs[degree] if 0 <= degree < len(self.coeffs) else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def without_constant(self) -> "Poly":
        return Poly((ZERO,) + self.coeffs[1:]) if self.coeffs else self

    def sort_key(self) -> tuple:
        """Ordering key: degree descending, then coefficients from the top."""
        degree = len(self.coeffs) - 1
        return (-degree, tuple(c.sort_key() for c in reversed(self.coeffs)))

    def scale(self, factor: ScalarLike) -> "Poly":
        factor = GaussianRational.coerce(factor)
        return Poly(tuple(c * factor for c in self.coeffs))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result, base = Poly.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other) -> Tuple["Poly", "Poly"]:
        other = Poly.coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        dq = len(other.coeffs) - 1
        rem = list(self.coeffs)
        quot = [ZERO] * max(len(rem) - dq, 0)
        inv = ONE / other.leading
        for i in range(len(rem) - 1, dq - 1, -1):
            if rem[i].is_zero():
                continue
            c = rem[i] * inv
            quot[i - dq] = c
            for j, qc in enumerate(other.coeffs):
                rem[i - dq + j] = rem[i - dq + j] - c * qc
        return Poly(tuple(quot)), Poly(tuple(rem[:dq]))

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly(tuple(c * i for i, c in enumerate(self.coeffs) if i > 0))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(ONE / self.leading)

    def primitive(self) -> "Poly":
        """Gaussian-integer coefficients with unit content, same roots."""
        if self.is_zero():
            return self
        denominators = [c.re.denominator for c in self.coeffs] + [c.im.denominator for c in self.coeffs]
        scaled = self.scale(reduce(math.lcm, denominators))
        content = reduce(_gaussian_int_gcd, scaled.coeffs)
        return scaled.scale(ONE / content)

    def __call__(self, x: ScalarLike) -> GaussianRational:
        x = GaussianRational.coerce(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_numpy(self) -> np.ndarray:
        return np.array([c.to_complex() for c in self.coeffs] or [0j], dtype=complex)

    def eval_complex(self, z: complex) -> complex:
        return complex(npoly.polyval(z, self.to_numpy()))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """
    Monic gcd through a primitive remainder sequence.

    Args:
        p: First polynomial
        q: Second polynomial

    Returns:
        Monic gcd (zero only when both inputs are zero)
    """
    if p.is_zero() and q.is_zero():
        return Poly.zero()
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def poly_arith(p: Poly, q: Poly, op: str) -> Union[Poly, Tuple[Poly, Poly]]:
    """Ring operations on polynomials: 'add', 'sub', 'mul', 'divmod', 'gcd'."""
    p, q = Poly.coerce(p), Poly.coerce(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "divmod":
        return divmod(p, q)
    if op == "gcd":
        return poly_gcd(p, q)
    raise ValueError(f"unknown operation: {op}")


def poly_derivative(p: Poly) -> Poly:
    return Poly.coerce(p).derivative()


def zeros_have_multiplicity_below(p: Poly, k: int) -> bool:
    """True iff every root of p has multiplicity at most k - 1."""
    g, d = p, p
    for _ in range(1, k):
        d = d.derivative()
        g = poly_gcd(g, d)
    return g.monic().degree <= 0


@dataclass(frozen=True)
class RatFun:
    """Reduced rational function num/den with monic denominator."""
    num: Poly = Poly()
    den: Poly = Poly((ONE,))

    def __post_init__(self):
        num, den = Poly.coerce(self.num), Poly.coerce(self.den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        else:
            if den.degree > 0 and num.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            lc = den.leading
            if lc != ONE:
                inv = ONE / lc
                num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def coerce(cls, value: Union["RatFun", Poly, ScalarLike]) -> "RatFun":
        if isinstance(value, RatFun):
            return value
        return cls(Poly.coerce(value))

    @classmethod
    def zero(cls) -> "RatFun":
        return cls()

    @classmethod
    def one(cls) -> "RatFun":
        return cls(Poly.one())

    @property
    def deg(self) -> DegreeValue:
        if self.is_zero():
            return NEG_INFINITY
        return self.num.degree - self.den.degree

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def constant_value(self) -> Optional[GaussianRational]:
        return self.num.constant_term if self.is_constant() else None

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("rational function has a non-trivial denominator")
        return self.num

    def sort_key(self) -> tuple:
        return (self.num.sort_key(), self.den.sort_key())

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __add__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "RatFun":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return RatFun.one() / (self ** -exponent)
        return RatFun(self.num ** exponent, self.den ** exponent)

    def derivative(self) -> "RatFun":
        """Quotient rule."""
        return RatFun(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, z: complex, pole_tol: float = 1e-12) -> complex:
        n = self.num.eval_complex(z)
        d = self.den.eval_complex(z)
        if abs(d) < pole_tol * max(1.0, abs(n)):
            raise PoleAtSamplePoint(z)
        return n / d


def ratfun_normalize(num: Poly, den: Poly) -> RatFun:
    return RatFun(num, den)


def ratfun_deg(r: RatFun) -> DegreeValue:
    return RatFun.coerce(r).deg


def ratfun_arith(r: RatFun, s: Optional[RatFun], op: str) -> RatFun:
    """Field operations on rational functions: 'add', 'sub', 'mul', 'div', 'derivative'."""
    r = RatFun.coerce(r)
    if op == "derivative":
        return r.derivative()
    s = RatFun.coerce(s)
    if op == "add":
        return r + s
    if op == "sub":
        return r - s
    if op == "mul":
        return r * s
    if op == "div":
        return r / s
    raise ValueError(f"unknown operation: {op}")


def ratfun_eval(r: RatFun, z: complex, pole_tol: float = 1e-12) -> complex:
    return RatFun.coerce(r).eval(z, pole_tol)
