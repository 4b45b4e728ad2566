from pathlib import Path
from typing import Union

from .base_importer import BaseImporter, SpecRecord
from .csv_importer import CSVImporter
from .json_importer import JSONImporter


def importer_for(source: Union[str, Path], **kwargs) -> BaseImporter:
    """Pick the importer by file suffix (.csv or .json)."""
    suffix = Path(source).suffix.lower()
    if suffix == '.csv':
        return CSVImporter(source, **kwargs)
    if suffix == '.json':
        return JSONImporter(source, **kwargs)
    raise ValueError(f"Unsupported spec file type: {suffix or source}")


__all__ = ['BaseImporter', 'CSVImporter', 'JSONImporter', 'SpecRecord', 'importer_for']
