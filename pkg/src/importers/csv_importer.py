"""CSV equation-spec importer."""

import csv
from pathlib import Path
from typing import Optional, Union

import pandas as pd
from loguru import logger

from .base_importer import BaseImporter

# Expressions like "1/2" or "007" must reach the parser as typed
_AS_TEXT = {'dtype': str, 'keep_default_na': False, 'na_values': [''], 'skipinitialspace': True}


class CSVImporter(BaseImporter):
    """Equation tables in CSV: one equation per row, columns name, m, n, k, R and optional Q, alpha, f."""

    def __init__(self,
                 source: Union[str, Path],
                 encoding: str = 'utf-8',
                 validate: bool = True,
                 delimiter: Optional[str] = ','):
        """
        Args:
            source: Path to the table
            encoding: File encoding
            validate: Reject malformed rows before parsing
            delimiter: Field separator; None sniffs it from the file head
        """
        super().__init__(source, encoding, validate)
        self.delimiter = delimiter

    def load(self, **kwargs) -> pd.DataFrame:
        sep = self.delimiter or self.detect_delimiter()
        logger.info(f"Reading equation table {self.source} (sep={sep!r})")
        try:
            df = pd.read_csv(self.source, encoding=self.encoding, sep=sep, **{**_AS_TEXT, **kwargs})
        except pd.errors.EmptyDataError:
            logger.error(f"Equation table {self.source} is empty")
            raise
        logger.info(f"{len(df)} equations, columns: {', '.join(df.columns)}")
        return df

    def detect_delimiter(self, sample_size: int = 4096) -> str:
        """Guess the separator among comma, semicolon and tab."""
        with open(self.source, 'r', encoding=self.encoding) as file:
            head = file.read(sample_size)
        sep = csv.Sniffer().sniff(head, delimiters=",;\t").delimiter
        logger.debug(f"Sniffed separator {sep!r} in {self.source}")
        return sep
