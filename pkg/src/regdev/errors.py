"""Exception hierarchy.

Every error carries a stable class name; the CLI prints it on stderr so runs
can be grepped and compared mechanically.
"""
from __future__ import annotations


class RegdevError(Exception):
    """Base class for data and numeric failures (CLI exit code 1)."""

    exit_code = 1

    @property
    def name(self) -> str:
        return type(self).__name__


# ingestion
class MalformedRow(RegdevError, ValueError):
    pass


class UnknownIndicator(RegdevError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class DuplicateCell(RegdevError, ValueError):
    pass


class MissingData(RegdevError, ValueError):
    pass


class UnknownYear(RegdevError, ValueError):
    pass


class TooFewRows(RegdevError, ValueError):
    pass


class TooFewColumns(RegdevError, ValueError):
    pass


# numerics
class DegenerateColumn(RegdevError, ValueError):
    def __init__(self, indicator: str, detail: str = "column is constant"):
        super().__init__(f"{indicator}: {detail}")
        self.indicator = indicator


class NumericalFailure(RegdevError, ArithmeticError):
    pass


class DimensionMismatch(RegdevError, ValueError):
    pass


class NonFiniteInput(RegdevError, ValueError):
    pass


# clustering
class TooManyClusters(RegdevError, ValueError):
    pass


class InvalidK(RegdevError, ValueError):
    pass


class DegenerateClustering(RegdevError, ValueError):
    pass


class CurveTooShort(RegdevError, ValueError):
    pass


class NonMonotoneCurve(RegdevError, ValueError):
    pass


# export
class IncompleteRatings(RegdevError, ValueError):
    pass


class MissingGeometry(RegdevError, ValueError):
    def __init__(self, codes):
        self.codes = list(codes)
        super().__init__("no geometry for region code(s): " + ", ".join(self.codes))


class InvalidBoundaryFile(RegdevError, ValueError):
    pass


class UnknownColumn(RegdevError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


# configuration
class BadConfig(RegdevError, ValueError):
    """Usage-level error; the offending key is in ``key``."""

    exit_code = 2

    def __init__(self, key: str, detail: str):
        super().__init__(f"{key}: {detail}")
        self.key = key
