"""Randomised constructor sweeps: generate consistent instances, build members, report."""

import json
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger
from tqdm import tqdm

from .algebra import I_UNIT, ONE, GaussianRational, Poly, RatFun
from .classify import construct_t23_A1, construct_t23_A2, construct_t23_B, construct_t24
from .config import Settings, load_settings
from .errors import FamilyUnavailable, FermatError, VerificationFailed
from .exppoly import ExpPoly
from .models import FamilyMember, FamilyTag, FermatEquation

SWEEP_FAMILIES = (
    FamilyTag.T23_A1,
    FamilyTag.T23_A2,
    FamilyTag.T23_B,
    FamilyTag.T24_B,
    FamilyTag.T24_C,
    FamilyTag.T24_E,
)


class InstanceGenerator:
    """Seeded source of small random Gaussian rationals, polynomials and rational functions."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng

    def rational(self, bound: int = 2) -> Fraction:
        return Fraction(int(self.rng.integers(-bound, bound + 1)), int(self.rng.choice([1, 2])))

    def gaussian(self, bound: int = 2, nonzero: bool = True) -> GaussianRational:
        while True:
            value = GaussianRational(self.rational(bound), self.rational(bound))
            if not (nonzero and value.is_zero()):
                return value

    def poly(self, degree: int, bound: int = 2) -> Poly:
        coeffs = [self.gaussian(bound, nonzero=False) for _ in range(degree)]
        return Poly(tuple(coeffs) + (self.gaussian(bound),))

    def ratfun(self) -> RatFun:
        """Non-zero constant, linear polynomial or 1/(z - c)."""
        shape = int(self.rng.integers(0, 3))
        if shape == 0:
            return RatFun.coerce(self.gaussian())
        if shape == 1:
            return RatFun(self.poly(1))
        return RatFun(Poly.constant(self.gaussian()), Poly((-self.gaussian(2, nonzero=False), ONE)))

    def choice(self, values: Sequence[int]) -> int:
        return int(self.rng.choice(list(values)))


class FamilySweep:
    """Run every sweep family over seeded random instances and collect a report."""

    def __init__(self,
                 instances: Optional[int] = None,
                 seed: Optional[int] = None,
                 families: Sequence[FamilyTag] = SWEEP_FAMILIES,
                 settings: Optional[Settings] = None,
                 progress: bool = True):
        """
        Initialize the sweep.

        Args:
            instances: Random instances per family
            seed: Seed of the instance generator
            families: Families to sweep
            settings: Engine settings (tolerances, sampling)
            progress: Show a tqdm progress bar
        """
        self.settings = settings or load_settings()
        self.instances = instances if instances is not None else self.settings.sweep.instances_per_family
        self.seed = seed if seed is not None else self.settings.sweep.seed
        self.families = tuple(families)
        self.progress = progress
        self.rows: List[Dict[str, Any]] = []
        self._generators: Dict[FamilyTag, Callable[[InstanceGenerator], List[FamilyMember]]] = {
            FamilyTag.T23_A1: self._t23_a1,
            FamilyTag.T23_A2: self._t23_a2,
            FamilyTag.T23_B: self._t23_b,
            FamilyTag.T24_B: self._t24_b,
            FamilyTag.T24_C: self._t24_c,
            FamilyTag.T24_E: self._t24_e,
        }

    # Instance generators

    def _t23_a1(self, gen: InstanceGenerator) -> List[FamilyMember]:
        return construct_t23_A1(gen.choice([1, 2, 3]), gen.gaussian(), gen.gaussian(),
                                gen.gaussian(nonzero=False), self.settings)

    def _t23_a2(self, gen: InstanceGenerator) -> List[FamilyMember]:
        return construct_t23_A2(gen.choice([1, 2, 3]), gen.gaussian(),
                                gen.gaussian(nonzero=False), gen.gaussian(nonzero=False), self.settings)

    def _t23_b(self, gen: InstanceGenerator) -> List[FamilyMember]:
        return construct_t23_B(gen.choice([3, 4]), gen.choice([1, 2, 3]), gen.gaussian(), gen.gaussian(),
                               gen.gaussian(nonzero=False), self.settings)

    def _t24_b(self, gen: InstanceGenerator) -> List[FamilyMember]:
        """R is solved from Q1, Q2, d and alpha so that the family identity holds."""
        k = gen.choice([1, 2])
        while True:
            Q1, Q2, d = gen.ratfun(), gen.ratfun(), gen.gaussian()
            alpha = gen.poly(gen.choice([1, 2]))
            S = (Q1 * (d * d) - Q2) / (2 * I_UNIT * d)
            C = (Q1 * (d * d) + Q2) / (2 * d)
            if S.is_zero() or C.is_zero():
                continue
            half = alpha.scale(Fraction(1, 2))
            derivative = ExpPoly.term(S, half).derivative(k).single_term()
            exponent, cshift, T = derivative
            if exponent + cshift != half:
                raise RuntimeError("derivative left the exponent class")
            eq = FermatEquation(2, 2, k, C / T, Q1 * Q2, alpha)
            return [construct_t24(FamilyTag.T24_B, eq, {"Q1": Q1, "Q2": Q2, "d": d}, self.settings)]

    def _t24_c(self, gen: InstanceGenerator) -> List[FamilyMember]:
        k = gen.choice([1, 3])
        A, Q1, Q2 = gen.gaussian(), gen.gaussian(), gen.gaussian()
        b, b1 = gen.gaussian(nonzero=False), gen.gaussian(nonzero=False)
        eq = FermatEquation(2, 2, k, A, Q1 * Q2, Poly((b,)))
        params = {"Q1": Q1, "Q2": Q2, "a1_root": gen.choice(range(k)), "b1": b1}
        return [construct_t24(FamilyTag.T24_C, eq, params, self.settings)]

    def _t24_e(self, gen: InstanceGenerator) -> List[FamilyMember]:
        P = gen.poly(gen.choice([2, 3]))
        c, Q1, Q2 = gen.gaussian(nonzero=False), gen.gaussian(), gen.gaussian()
        R = RatFun(Poly.constant(-I_UNIT), P.derivative())
        eq = FermatEquation(2, 2, 1, R, Q1 * Q2, Poly((c,)))
        return [construct_t24(FamilyTag.T24_E, eq, {"P": P, "Q1": Q1, "Q2": Q2, "c": c}, self.settings)]

    # Running

    def _row(self, tag: FamilyTag, instance: int, index: int, outcome: str, **extra) -> Dict[str, Any]:
        row = {
            'family': tag.value,
            'instance': instance,
            'member': index,
            'outcome': outcome,
            'mode': None,
            'max_residual': None,
            'm': None,
            'k': None,
            'seconds': None,
            'detail': '',
        }
        row.update(extra)
        return row

    def _member_row(self, tag: FamilyTag, instance: int, index: int, member: FamilyMember, seconds: float):
        report = member.report
        return self._row(
            tag, instance, index,
            'verified' if report.verified else 'refuted',
            mode=report.mode.value,
            max_residual=report.max_residual,
            m=member.equation.m,
            k=member.equation.k,
            seconds=round(seconds, 6),
            detail='; '.join(member.notes),
        )

    def run_family(self, tag: FamilyTag) -> pd.DataFrame:
        """
        Sweep one family.

        Args:
            tag: Family to sweep

        Returns:
            One row per member (or per unavailable / failed instance)
        """
        gen = InstanceGenerator(np.random.default_rng([self.seed, list(FamilyTag).index(tag)]))
        rows = []
        iterator = tqdm(range(self.instances), desc=tag.value, disable=not self.progress, leave=False)
        for instance in iterator:
            start = time.perf_counter()
            try:
                members = self._generators[tag](gen)
            except FamilyUnavailable as e:
                rows.append(self._row(tag, instance, -1, 'unavailable', detail=str(e)))
                continue
            except VerificationFailed as e:
                logger.error(f"{tag.value} instance {instance}: {e}")
                rows.append(self._row(tag, instance, -1, 'refuted', mode=e.report.mode.value,
                                      max_residual=e.report.max_residual, detail=str(e)))
                continue
            except FermatError as e:
                logger.error(f"{tag.value} instance {instance}: {e}")
                rows.append(self._row(tag, instance, -1, 'error', detail=f"{type(e).__name__}: {e}"))
                continue
            seconds = (time.perf_counter() - start) / max(len(members), 1)
            for index, member in enumerate(members):
                rows.append(self._member_row(tag, instance, index, member, seconds))
        self.rows.extend(rows)
        return pd.DataFrame(rows, columns=self._columns())

    def run(self) -> pd.DataFrame:
        """Sweep every configured family and return the combined report."""
        logger.info(f"Starting sweep: {self.instances} instances per family, seed {self.seed}")
        self.rows = []
        for tag in self.families:
            df = self.run_family(tag)
            logger.info(f"{tag.value}: {int((df['outcome'] == 'verified').sum())}/{len(df)} rows verified")
        return self.report()

    def _columns(self) -> List[str]:
        return list(self._row(FamilyTag.T23_A1, 0, 0, '').keys())

    def report(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=self._columns())

    @property
    def all_verified(self) -> bool:
        """True iff every produced member verified and no instance failed."""
        df = self.report()
        if df.empty:
            return False
        return bool(df['outcome'].isin(['verified', 'unavailable']).all() and (df['outcome'] == 'verified').any())

    def generate_statistics(self) -> Dict[str, Any]:
        """Per-family counts, verification rate and residual summary."""
        df = self.report()
        stats: Dict[str, Any] = {
            'seed': self.seed,
            'instances_per_family': self.instances,
            'total_rows': len(df),
            'all_verified': self.all_verified,
            'families': {},
        }
        for family, group in df.groupby('family', sort=True):
            members = group[group['member'] >= 0]
            residuals = members['max_residual'].dropna()
            stats['families'][family] = {
                'members': int(len(members)),
                'verified': int((members['outcome'] == 'verified').sum()),
                'refuted': int((group['outcome'] == 'refuted').sum()),
                'unavailable': int((group['outcome'] == 'unavailable').sum()),
                'errors': int((group['outcome'] == 'error').sum()),
                'exact': int((members['mode'] == 'exact').sum()),
                'numeric': int((members['mode'] == 'numeric').sum()),
                'max_residual': float(residuals.max()) if not residuals.empty else None,
                'verified_rate': round(float((members['outcome'] == 'verified').mean()), 4) if len(members) else None,
            }
        return stats

    def export_to_json(self, output_dir: Optional[Path] = None) -> Path:
        output_dir = Path(output_dir or self.settings.sweep.output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        stats_file = output_dir / 'sweep_statistics.json'
        with open(stats_file, 'w', encoding='utf-8') as f:
            json.dump(self.generate_statistics(), f, ensure_ascii=False, indent=2, sort_keys=True)
        logger.info(f"Exported statistics to {stats_file}")
        return stats_file

    def export_to_csv(self, output_dir: Optional[Path] = None) -> Path:
        output_dir = Path(output_dir or self.settings.sweep.output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        members_csv = output_dir / 'sweep_members.csv'
        self.report().to_csv(members_csv, index=False, encoding='utf-8')
        logger.info(f"Exported members to {members_csv}")
        return members_csv
