"""JSON equation-spec importer."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from loguru import logger

from .base_importer import BaseImporter


class JSONImporter(BaseImporter):
    """
    Equation lists in JSON.

    The top level is either a list of equation objects or an object holding
    that list under ``record_path`` (the regression corpus uses "equations").
    Extra keys per equation (notes, provenance) are carried along and ignored.
    """

    def __init__(self,
                 source: Union[str, Path],
                 encoding: str = 'utf-8',
                 validate: bool = True,
                 record_path: Optional[str] = "equations"):
        super().__init__(source, encoding, validate)
        self.record_path = record_path

    def _equations(self) -> List[Dict[str, Any]]:
        with open(self.source, 'r', encoding=self.encoding) as file:
            try:
                payload = json.load(file)
            except json.JSONDecodeError as e:
                logger.error(f"{self.source} is not valid JSON: {e}")
                raise
        if isinstance(payload, list):
            return payload
        if self.record_path in payload:
            return payload[self.record_path]
        raise ValueError(f"{self.source}: no '{self.record_path}' list at the top level")

    def load(self, **kwargs) -> pd.DataFrame:
        logger.info(f"Reading equation list {self.source}")
        df = pd.json_normalize(self._equations(), max_level=0)
        logger.info(f"{len(df)} equations")
        return df

    def analyze_structure(self) -> Dict[str, Any]:
        """Count the equations and those carrying a candidate f; empty dict if unreadable."""
        try:
            equations = self._equations()
        except (OSError, ValueError) as e:
            logger.error(f"Cannot inspect {self.source}: {e}")
            return {}
        keys = sorted({key for eq in equations for key in eq})
        return {
            'record_count': len(equations),
            'columns': keys,
            'with_candidate': sum(1 for eq in equations if eq.get('f') is not None),
            'size_bytes': self.source.stat().st_size,
        }
