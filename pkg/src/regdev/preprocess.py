"""Normalization, descriptive statistics and Pearson correlation."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DegenerateColumn, TooFewRows
from .panel import Polarity


class NormMethod(str, enum.Enum):
    MINMAX = "minmax"
    ZSCORE = "zscore"


@dataclass(frozen=True, eq=False)
class NormalizedMatrix:
    rows: tuple
    columns: tuple[str, ...]
    values: np.ndarray
    method: NormMethod
    # minmax: (min, max); zscore: (mean, population sd); per column
    calibration: tuple[np.ndarray, np.ndarray]
    flipped: tuple[bool, ...]


@dataclass(frozen=True, eq=False)
class DescriptiveStats:
    columns: tuple[str, ...]
    count: np.ndarray
    mean: np.ndarray
    median: np.ndarray
    sd: np.ndarray
    min: np.ndarray
    max: np.ndarray

    def as_rows(self):
        for j, c in enumerate(self.columns):
            yield c, int(self.count[j]), self.mean[j], self.median[j], self.sd[j], self.min[j], self.max[j]


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    columns: tuple[str, ...]
    values: np.ndarray

    def __getitem__(self, pair: tuple[str, str]) -> float:
        a, b = pair
        return float(self.values[self.columns.index(a), self.columns.index(b)])


def _is_negative(polarity: Mapping[str, Polarity | str], col: str) -> bool:
    return Polarity(polarity.get(col, Polarity.POSITIVE)) is Polarity.NEGATIVE


def normalize(matrix, polarity: Mapping[str, Polarity | str] | None = None,
              method: NormMethod | str = NormMethod.MINMAX) -> NormalizedMatrix:
    """Rescale every column over all supplied rows, orienting negative-polarity
    indicators so that larger always means more developed.

    Indicators absent from ``polarity`` are treated as positive.
    """
    method = NormMethod(method)
    polarity = polarity or {}
    x = np.asarray(matrix.values, dtype=float)
    flipped = tuple(_is_negative(polarity, c) for c in matrix.columns)
    out = np.empty_like(x)

    if method is NormMethod.MINMAX:
        lo, hi = x.min(axis=0), x.max(axis=0)
        for j, col in enumerate(matrix.columns):
            span = hi[j] - lo[j]
            if not span > 0:
                raise DegenerateColumn(col, "max equals min")
            # both numerators are >= 0 and <= span, so results stay in [0, 1]
            if flipped[j]:
                out[:, j] = (hi[j] - x[:, j]) / span
            else:
                out[:, j] = (x[:, j] - lo[j]) / span
        calib = (lo, hi)
    else:
        mu, sd = x.mean(axis=0), x.std(axis=0)
        for j, col in enumerate(matrix.columns):
            if not sd[j] > 0:
                raise DegenerateColumn(col, "zero standard deviation")
            z = (x[:, j] - mu[j]) / sd[j]
            out[:, j] = -z if flipped[j] else z
        calib = (mu, sd)

    return NormalizedMatrix(tuple(matrix.rows), tuple(matrix.columns), out, method, calib, flipped)


def describe(matrix) -> DescriptiveStats:
    x = np.asarray(matrix.values, dtype=float)
    if x.shape[0] < 2:
        raise TooFewRows(f"descriptive statistics need >= 2 rows, got {x.shape[0]}")
    return DescriptiveStats(
        columns=tuple(matrix.columns),
        count=np.full(x.shape[1], x.shape[0]),
        mean=x.mean(axis=0),
        median=np.median(x, axis=0),
        sd=x.std(axis=0, ddof=1),
        min=x.min(axis=0),
        max=x.max(axis=0),
    )


def _standardize(x: np.ndarray, columns) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    mu = x.mean(axis=0)
    centered = x - mu
    sd = np.sqrt((centered ** 2).mean(axis=0))
    for j, col in enumerate(columns):
        if not sd[j] > 0 or np.ptp(x[:, j]) == 0:
            raise DegenerateColumn(col)
    return centered / sd, mu, sd


def correlation_values(x: np.ndarray, columns) -> np.ndarray:
    """Pearson correlation of the columns of ``x`` (population moments cancel)."""
    z, _, _ = _standardize(np.asarray(x, dtype=float), columns)
    r = z.T @ z / z.shape[0]
    r = (r + r.T) / 2
    np.fill_diagonal(r, 1.0)
    return np.clip(r, -1.0, 1.0)


def correlation_matrix(matrix) -> CorrelationMatrix:
    if len(matrix.rows) < 2:
        raise TooFewRows("correlation needs >= 2 rows")
    return CorrelationMatrix(tuple(matrix.columns), correlation_values(matrix.values, matrix.columns))
