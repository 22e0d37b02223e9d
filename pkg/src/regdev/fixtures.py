"""Published index values bundled with the package."""
from __future__ import annotations

from importlib import resources

from .export.tables import IndexTable, read_index_table

PUBLISHED_YEARS = (2000, 2010, 2020)


def published_path():
    return resources.files("regdev") / "data" / "published_indices.csv"


def load_published() -> IndexTable:
    """Economic, social and socioeconomic index values for 81 provinces in
    2000, 2010 and 2020, keyed by licence-plate code, two decimals."""
    with resources.as_file(published_path()) as p:
        return read_index_table(p)
