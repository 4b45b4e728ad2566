"""Floating-point twin of ExpPoly for solution families with non-rational constants."""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .algebra import RatFun
from .errors import OverflowAtSamplePoint, PoleAtSamplePoint
from .exppoly import ExpPoly


def _as_array(coeffs: Iterable[complex]) -> np.ndarray:
    arr = np.asarray(list(coeffs) or [0j], dtype=complex)
    return arr


@dataclass(frozen=True, eq=False)
class NumericTerm:
    """scale * num(z) / den(z)**power * exp(exponent(z))."""
    scale: complex
    num: np.ndarray
    den: np.ndarray
    power: int
    exponent: np.ndarray

    def derivative(self) -> "NumericTerm":
        # d/dz [N D^-p e^P] = (N'D - pND' + P'ND) D^-(p+1) e^P
        nd = npoly.polymul(self.num, self.den)
        new_num = npoly.polyadd(
            npoly.polysub(
                npoly.polymul(npoly.polyder(self.num), self.den),
                self.power * npoly.polymul(self.num, npoly.polyder(self.den)),
            ),
            npoly.polymul(npoly.polyder(self.exponent), nd),
        )
        return NumericTerm(self.scale, new_num, self.den, self.power + 1, self.exponent)

    def eval(self, z: complex, pole_tol: float = 1e-12, overflow: float = 700.0) -> complex:
        n = complex(npoly.polyval(z, self.num))
        d = complex(npoly.polyval(z, self.den))
        if abs(d) < pole_tol * max(1.0, abs(n)):
            raise PoleAtSamplePoint(z)
        e = complex(npoly.polyval(z, self.exponent))
        if abs(e) > overflow:
            raise OverflowAtSamplePoint(z, e)
        return self.scale * n / d ** self.power * complex(np.exp(e))


@dataclass(frozen=True, eq=False)
class NumericExpPoly:
    """Sum of NumericTerm values."""
    terms: Tuple[NumericTerm, ...] = ()

    @classmethod
    def term(cls,
             scale: complex,
             exponent: Sequence[complex] = (0j,),
             coeff: Optional[RatFun] = None) -> "NumericExpPoly":
        """
        Single term scale * coeff(z) * exp(exponent(z)).

        Args:
            scale: Complex scalar factor
            exponent: Ascending complex coefficients of the exponent polynomial
            coeff: Optional exact rational coefficient

        Returns:
            One-term NumericExpPoly
        """
        coeff = coeff if coeff is not None else RatFun.one()
        return cls((NumericTerm(
            complex(scale),
            coeff.num.to_numpy(),
            coeff.den.to_numpy(),
            1,
            _as_array(exponent),
        ),))

    @classmethod
    def from_exact(cls, f: ExpPoly) -> "NumericExpPoly":
        terms = []
        for exponent, cshift, ratfun in f.flat_terms():
            terms.extend(cls.term(np.exp(cshift.to_complex()), exponent.to_numpy(), ratfun).terms)
        return cls(tuple(terms))

    def __add__(self, other: "NumericExpPoly") -> "NumericExpPoly":
        return NumericExpPoly(self.terms + other.terms)

    def __neg__(self) -> "NumericExpPoly":
        return self * -1

    def __sub__(self, other: "NumericExpPoly") -> "NumericExpPoly":
        return self + (-other)

    def __mul__(self, factor: complex) -> "NumericExpPoly":
        return NumericExpPoly(tuple(
            NumericTerm(t.scale * complex(factor), t.num, t.den, t.power, t.exponent)
            for t in self.terms
        ))

    __rmul__ = __mul__

    def derivative(self, k: int = 1) -> "NumericExpPoly":
        result = self
        for _ in range(k):
            result = NumericExpPoly(tuple(t.derivative() for t in result.terms))
        return result

    def eval(self, z: complex, pole_tol: float = 1e-12, overflow: float = 700.0) -> complex:
        return sum((t.eval(z, pole_tol, overflow) for t in self.terms), 0j)
