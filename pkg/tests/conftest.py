"""Shared fixtures: the regression corpus and seeded random generators."""

import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, List

import numpy as np
import pytest

from src.algebra import GaussianRational, Poly, RatFun
from src.config import load_settings
from src.exppoly import ExpPoly
from src.models import FermatEquation
from src.parser import parse_exppoly, parse_poly, parse_ratfun

FIXTURES = Path(__file__).resolve().parent.parent / "data" / "fixtures"
CORPUS_PATH = FIXTURES / "regression_corpus.json"
TABLE_PATH = FIXTURES / "classification_table.csv"

# misprinted right-hand side of the cubic-exponent example
MISPRINTED_CUBIC_Q = "(z^9 + 3*z^8 + 3*z^7 + 4*z^6 + 11*z^5 + 3*z^4 + 4*z^3 + 1)/z^3"


def load_corpus() -> List[Dict]:
    with open(CORPUS_PATH, "r", encoding="utf-8") as file:
        return json.load(file)["equations"]


def corpus_equation(entry: Dict) -> FermatEquation:
    return FermatEquation(
        m=entry["m"],
        n=entry["n"],
        k=entry["k"],
        R=parse_ratfun(entry["R"]),
        Q=parse_ratfun(entry["Q"]),
        alpha=parse_poly(entry["alpha"]),
    )


CORPUS = load_corpus()
CORPUS_IDS = [entry["name"] for entry in CORPUS]


@pytest.fixture(params=CORPUS, ids=CORPUS_IDS)
def corpus_case(request):
    """(equation, candidate, raw entry) for every regression fixture."""
    entry = request.param
    return corpus_equation(entry), parse_exppoly(entry["f"]), entry


@pytest.fixture
def corpus_by_name():
    return {entry["name"]: (corpus_equation(entry), parse_exppoly(entry["f"])) for entry in CORPUS}


@pytest.fixture
def settings():
    return load_settings()


class RandomAlgebra:
    """Small random Gaussian rationals, polynomials, rational functions and exponential polynomials."""

    def __init__(self, seed: int):
        self.rng = np.random.default_rng(seed)

    def gaussian(self, bound: int = 3, nonzero: bool = False) -> GaussianRational:
        while True:
            re = Fraction(int(self.rng.integers(-bound, bound + 1)), int(self.rng.integers(1, 4)))
            im = Fraction(int(self.rng.integers(-bound, bound + 1)), int(self.rng.integers(1, 4)))
            value = GaussianRational(re, im)
            if not (nonzero and value.is_zero()):
                return value

    def poly(self, max_degree: int = 3, nonzero: bool = False) -> Poly:
        while True:
            degree = int(self.rng.integers(0, max_degree + 1))
            p = Poly(tuple(self.gaussian() for _ in range(degree + 1)))
            if not (nonzero and p.is_zero()):
                return p

    def ratfun(self, max_degree: int = 3, nonzero: bool = False) -> RatFun:
        while True:
            r = RatFun(self.poly(max_degree), self.poly(max_degree, nonzero=True))
            if not (nonzero and r.is_zero()):
                return r

    def exponent(self, max_degree: int = 2) -> Poly:
        degree = int(self.rng.integers(1, max_degree + 1))
        return Poly((0,) + tuple(self.gaussian(1) for _ in range(degree)))

    def exppoly(self, terms: int = 3, max_degree: int = 2) -> ExpPoly:
        result = ExpPoly.zero()
        for _ in range(int(self.rng.integers(1, terms + 1))):
            exponent = self.exponent(max_degree) + self.gaussian(1)
            result = result + ExpPoly.term(self.ratfun(2), exponent)
        return result


@pytest.fixture
def random_algebra():
    return RandomAlgebra(20240)
