"""Settings loaded from config/settings.yaml."""

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from loguru import logger

DEFAULT_SETTINGS_PATH = Path(__file__).resolve().parent.parent / "config" / "settings.yaml"


@dataclass(frozen=True)
class Tolerances:
    constraint: float = 1e-10
    residual: float = 1e-9
    finite_difference: float = 1e-6
    pole: float = 1e-12
    root: float = 1e-12


@dataclass(frozen=True)
class Sampling:
    seed: int = 42
    points: int = 20
    r_min: float = 0.5
    r_max: float = 2.0
    max_draw_factor: int = 10
    overflow_exponent: float = 700.0


@dataclass(frozen=True)
class SweepSettings:
    instances_per_family: int = 50
    seed: int = 2024
    output_dir: str = "data/processed"


@dataclass(frozen=True)
class LoggingSettings:
    level: str = "WARNING"
    file: Optional[str] = None
    rotation: str = "10 MB"


@dataclass(frozen=True)
class Settings:
    """Model for the engine configuration."""
    tolerances: Tolerances = field(default_factory=Tolerances)
    sampling: Sampling = field(default_factory=Sampling)
    sweep: SweepSettings = field(default_factory=SweepSettings)
    logging: LoggingSettings = field(default_factory=LoggingSettings)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Settings":
        """Build settings from a parsed YAML mapping; unknown keys are ignored."""
        def section(klass, key):
            raw = data.get(key) or {}
            known = {name: raw[name] for name in klass.__dataclass_fields__ if name in raw}
            return klass(**known)

        return cls(
            tolerances=section(Tolerances, "tolerances"),
            sampling=section(Sampling, "sampling"),
            sweep=section(SweepSettings, "sweep"),
            logging=section(LoggingSettings, "logging"),
        )

    def to_dict(self) -> dict:
        return {
            "tolerances": vars(self.tolerances).copy(),
            "sampling": vars(self.sampling).copy(),
            "sweep": vars(self.sweep).copy(),
            "logging": vars(self.logging).copy(),
        }


@lru_cache(maxsize=8)
def _load_cached(path: Path) -> Settings:
    if not path.exists():
        logger.warning(f"Settings file not found: {path}, using defaults")
        return Settings()
    try:
        with open(path, "r", encoding="utf-8") as file:
            data = yaml.safe_load(file) or {}
    except yaml.YAMLError as e:
        logger.error(f"Invalid settings file {path}: {e}")
        raise
    logger.debug(f"Loaded settings from {path}")
    return Settings.from_dict(data)


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """
    Load engine settings.

    Args:
        path: YAML file to read; defaults to config/settings.yaml

    Returns:
        Frozen Settings instance
    """
    return _load_cached(Path(path) if path is not None else DEFAULT_SETTINGS_PATH)
