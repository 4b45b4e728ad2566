"""Base importer class for equation-spec tables."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from loguru import logger

from ..exppoly import ExpPoly
from ..models import FermatEquation
from ..parser import parse_exppoly, parse_poly, parse_ratfun, print_canonical

REQUIRED_COLUMNS = ("name", "m", "n", "k", "r")
OPTIONAL_DEFAULTS = {"q": "1", "alpha": "0", "f": None}


def _clean_cell(value: Any) -> Optional[str]:
    if value is None or (isinstance(value, float) and pd.isna(value)):
        return None
    text = str(value).strip()
    return text or None


@dataclass(frozen=True)
class SpecRecord:
    """One row of an equation-spec table."""
    name: str
    equation: FermatEquation
    f: Optional[ExpPoly] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {"name": self.name, "equation": self.equation.to_dict()}
        if self.f is not None:
            data["f"] = print_canonical(self.f)
        return data


class BaseImporter(ABC):
    """Abstract base class for equation-spec importers."""

    def __init__(self,
                 source: Union[str, Path],
                 encoding: str = 'utf-8',
                 validate: bool = True):
        """
        Initialize the importer.

        Args:
            source: Path to the source file
            encoding: Character encoding for text files
            validate: Whether to validate data after import
        """
        self.source = Path(source) if isinstance(source, str) else source
        self.encoding = encoding
        self.validate = validate
        self._data: Optional[pd.DataFrame] = None
        self._metadata: Dict[str, Any] = {}

        logger.info(f"Initialized {self.__class__.__name__} for {self.source}")

    @abstractmethod
    def load(self, **kwargs) -> pd.DataFrame:
        """
        Load the raw table from the source.

        Returns:
            DataFrame with one equation per row
        """

    def validate_data(self, df: pd.DataFrame) -> bool:
        """
        Validate the loaded table.

        Args:
            df: DataFrame to validate

        Returns:
            True if validation passes
        """
        validation_errors = []
        columns = [str(c).strip().lower() for c in df.columns]

        if df.empty:
            validation_errors.append("DataFrame is empty")

        missing = [c for c in REQUIRED_COLUMNS if c not in columns]
        if missing:
            validation_errors.append(f"Missing columns: {missing}")
        else:
            renamed = df.rename(columns=lambda c: str(c).strip().lower())
            for col in ("m", "n", "k"):
                values = pd.to_numeric(renamed[col], errors="coerce")
                bad = renamed.loc[values.isna() | (values < 1) | (values % 1 != 0), "name"].tolist()
                if bad:
                    validation_errors.append(f"Column '{col}' needs positive integers, rows: {bad}")
            duplicates = renamed["name"][renamed["name"].duplicated()].tolist()
            if duplicates:
                validation_errors.append(f"Duplicate names: {duplicates}")

        if validation_errors:
            for error in validation_errors:
                logger.error(f"Validation error: {error}")
            return False
        return True

    def transform(self, df: pd.DataFrame) -> pd.DataFrame:
        """
        Normalise column names, strip expressions and fill optional columns.

        Args:
            df: Input DataFrame

        Returns:
            Transformed DataFrame
        """
        df = df.copy()
        df.columns = df.columns.astype(str).str.strip().str.lower()
        for col, default in OPTIONAL_DEFAULTS.items():
            if col not in df.columns:
                df[col] = default
        for col in ("name", "r", "q", "alpha", "f"):
            df[col] = df[col].map(_clean_cell)
        df["q"] = df["q"].fillna("1")
        df["alpha"] = df["alpha"].fillna("0")
        for col in ("m", "n", "k"):
            df[col] = pd.to_numeric(df[col]).astype(int)
        return df

    def import_data(self, **kwargs) -> pd.DataFrame:
        """
        Main method to import and process a spec table.

        Returns:
            Processed DataFrame
        """
        logger.info(f"Starting import from {self.source}")

        df = self.load(**kwargs)
        self._data = df

        self._metadata = {
            'source': str(self.source),
            'shape': df.shape,
            'columns': list(df.columns),
        }

        logger.info(f"Loaded {df.shape[0]} rows and {df.shape[1]} columns")

        if self.validate:
            if not self.validate_data(df):
                raise ValueError("Data validation failed")
            logger.success("Data validation passed")

        df = self.transform(df)

        logger.success("Import completed successfully")
        return df

    def records(self, **kwargs) -> List[SpecRecord]:
        """
        Import the table and parse every row into an equation.

        Returns:
            One SpecRecord per row, in file order

        Raises:
            LexError, ParseError: When a row holds a malformed expression
        """
        df = self.import_data(**kwargs)
        records = []
        for row in df.itertuples(index=False):
            try:
                equation = FermatEquation(
                    m=int(row.m),
                    n=int(row.n),
                    k=int(row.k),
                    R=parse_ratfun(row.r),
                    Q=parse_ratfun(row.q),
                    alpha=parse_poly(row.alpha),
                )
                f = parse_exppoly(row.f) if pd.notna(row.f) else None
            except Exception as e:
                logger.error(f"Row '{row.name}': {e}")
                raise
            records.append(SpecRecord(str(row.name), equation, f))
        self._metadata['records'] = len(records)
        self._metadata['with_candidate'] = sum(r.f is not None for r in records)
        return records

    def get_metadata(self) -> Dict[str, Any]:
        """Get metadata about the imported data."""
        return self._metadata

    def preview(self, n: int = 5) -> pd.DataFrame:
        """
        Preview the first n rows of data.

        Args:
            n: Number of rows to preview

        Returns:
            Preview DataFrame
        """
        if self._data is None:
            raise ValueError("No data loaded. Call import_data() first.")
        return self._data.head(n)
