"""Correlation-matrix PCA and composite development indices."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, NumericalFailure, TooFewRows
from .panel import (
    DataMatrix,
    IndicatorPanel,
    MissingPolicy,
    Scope,
    select_indicators,
    slice_matrix,
)
from .preprocess import NormMethod, _standardize, normalize

SCOPES: tuple[Scope, ...] = (Scope.ECONOMIC, Scope.SOCIAL, Scope.SOCIOECONOMIC)

_EIG_CLAMP = 1e-9


@dataclass(frozen=True, eq=False)
class PcaModel:
    columns: tuple[str, ...]
    eigenvalues: np.ndarray  # descending
    loadings: np.ndarray  # p x p, column j is component j
    mean: np.ndarray
    sd: np.ndarray  # population sd of the fit data
    retained: int = 1

    @property
    def p(self) -> int:
        return len(self.columns)

    @property
    def explained_ratio(self) -> np.ndarray:
        return self.eigenvalues / self.eigenvalues.sum()

    @property
    def weights(self) -> np.ndarray:
        lam = self.eigenvalues[: self.retained]
        return lam / lam.sum()

    def with_retained(self, m: int) -> "PcaModel":
        if not 1 <= m <= self.p:
            raise ValueError(f"retained count must be in [1, {self.p}], got {m}")
        return PcaModel(self.columns, self.eigenvalues, self.loadings, self.mean, self.sd, m)

    def scores(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            x = x[None, :]
        if x.shape[1] != self.p:
            raise DimensionMismatch(f"rows have {x.shape[1]} columns, model expects {self.p}")
        return ((x - self.mean) / self.sd) @ self.loadings


def orient_columns(vectors: np.ndarray) -> np.ndarray:
    """Flip eigenvector signs so each column sums to a non-negative value.

    A column whose sum is zero up to rounding falls back to making its
    largest-magnitude entry positive; magnitudes equal up to rounding go to
    the first such entry.
    """
    v = np.array(vectors, dtype=float, copy=True)
    for j in range(v.shape[1]):
        col = v[:, j]
        s = col.sum()
        mags = np.abs(col)
        if abs(s) <= 1e-10 * max(1.0, mags.sum()):
            s = col[int(np.argmax(mags >= mags.max() * (1 - 1e-9)))]
        if s < 0:
            v[:, j] = -col
    return v


def symmetric_eigh(r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs of a symmetric matrix, eigenvalues descending, oriented."""
    try:
        lam, vec = np.linalg.eigh(r)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigendecomposition failed: {exc}") from exc
    if not (np.isfinite(lam).all() and np.isfinite(vec).all()):
        raise NumericalFailure("eigendecomposition produced non-finite output")
    order = np.argsort(-lam, kind="stable")
    return lam[order], orient_columns(vec[:, order])


def pca_fit(matrix, retention: str = "kaiser", tau: float = 0.8) -> PcaModel:
    """Fit PCA on the Pearson correlation matrix of ``matrix.values``."""
    x = np.asarray(matrix.values, dtype=float)
    if x.shape[0] < 3:
        raise TooFewRows(f"PCA needs >= 3 rows, got {x.shape[0]}")
    z, mu, sd = _standardize(x, matrix.columns)
    r = z.T @ z / z.shape[0]
    r = (r + r.T) / 2
    lam, vec = symmetric_eigh(r)
    if lam[-1] < -_EIG_CLAMP:
        raise NumericalFailure(f"correlation matrix has negative eigenvalue {lam[-1]:.3g}")
    lam = np.maximum(lam, 0.0)
    model = PcaModel(tuple(matrix.columns), lam, vec, mu, sd)
    return model.with_retained(retain_components(model, retention, tau))


def retain_components(model_or_eigenvalues, rule: str = "kaiser", tau: float = 0.8) -> int:
    """Number of leading components to keep.

    ``kaiser`` keeps eigenvalues strictly above 1 (at least one component);
    ``variance`` keeps the shortest prefix whose explained share reaches ``tau``.
    """
    lam = np.asarray(getattr(model_or_eigenvalues, "eigenvalues", model_or_eigenvalues), dtype=float)
    if rule == "kaiser":
        return max(1, int((lam > 1.0).sum()))
    if rule == "variance":
        if not 0 < tau <= 1:
            raise ValueError(f"variance threshold must be in (0, 1], got {tau}")
        cum = np.cumsum(lam) / lam.sum()
        return int(np.searchsorted(cum, tau - 1e-12) + 1)
    raise ValueError(f"unknown retention rule {rule!r}")


def parse_retention(text: str) -> tuple[str, float]:
    """``kaiser`` or ``variance:<tau>``."""
    text = text.strip().lower()
    if text == "kaiser":
        return "kaiser", 0.8
    if text.startswith("variance"):
        _, _, raw = text.partition(":")
        tau = float(raw) if raw else 0.8
        if not 0 < tau <= 1:
            raise ValueError(f"variance threshold must be in (0, 1], got {tau}")
        return "variance", tau
    raise ValueError(f"unknown retention rule {text!r}")


def weighted_index(scores: np.ndarray, eigenvalues: Sequence[float]) -> np.ndarray:
    lam = np.asarray(eigenvalues, dtype=float)
    scores = np.atleast_2d(np.asarray(scores, dtype=float))
    return scores[:, : len(lam)] @ (lam / lam.sum())


def composite_index(model: PcaModel, rows) -> np.ndarray:
    """Explained-variance weighted sum of the retained component scores."""
    x = getattr(rows, "values", rows)
    cols = getattr(rows, "columns", None)
    if cols is not None and tuple(cols) != model.columns:
        raise DimensionMismatch(f"columns {tuple(cols)} differ from model columns {model.columns}")
    t = model.scores(x)
    return weighted_index(t, model.eigenvalues[: model.retained])


@dataclass(eq=False)
class IndexSeries:
    rows: tuple[tuple[str, int], ...]
    names: dict[str, str]
    values: dict[Scope, np.ndarray]
    models: dict[Scope, PcaModel] = field(default_factory=dict)
    labels: dict[Scope, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        for scope, v in self.values.items():
            if v.shape != (len(self.rows),) or not np.isfinite(v).all():
                raise ValueError(f"{scope.value} index must be finite with one value per row")

    @property
    def scopes(self) -> tuple[Scope, ...]:
        return tuple(self.values)

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(sorted({y for _, y in self.rows}))

    @property
    def codes(self) -> tuple[str, ...]:
        seen = dict.fromkeys(c for c, _ in self.rows)
        return tuple(seen)

    def year_mask(self, year: int) -> np.ndarray:
        return np.array([y == year for _, y in self.rows])

    def select_years(self, years: Sequence[int]) -> "IndexSeries":
        keep = np.array([y in set(years) for _, y in self.rows], dtype=bool)
        rows = tuple(r for r, m in zip(self.rows, keep) if m)
        return IndexSeries(rows, self.names, {s: v[keep] for s, v in self.values.items()}, self.models)

    def for_year(self, scope: Scope | str, year: int) -> tuple[list[str], np.ndarray]:
        mask = self.year_mask(year)
        codes = [c for (c, y), m in zip(self.rows, mask) if m]
        return codes, self.values[Scope(scope)][mask]


def build_index_series(
    panel: IndicatorPanel,
    norm: NormMethod | str = NormMethod.MINMAX,
    retention: str = "kaiser",
    tau: float = 0.8,
    years: Sequence[int] | None = None,
    missing: MissingPolicy | str = MissingPolicy.DROP,
    scopes: Sequence[Scope | str] = SCOPES,
) -> IndexSeries:
    """Slice, normalize, fit one pooled PCA per scope and score every row.

    Rows are those complete on all indicators, so every scope covers the same
    (region, year) keys.
    """
    full = slice_matrix(panel, Scope.SOCIOECONOMIC, years, missing)
    polarity = panel.polarity
    values: dict[Scope, np.ndarray] = {}
    models: dict[Scope, PcaModel] = {}
    for scope in (Scope(s) for s in scopes):
        sub: DataMatrix = full.subset(select_indicators(panel, scope))
        z = normalize(sub, polarity, norm)
        model = pca_fit(z, retention, tau)
        models[scope] = model
        values[scope] = composite_index(model, z)
    names = {r.code: r.name for r in panel.regions}
    return IndexSeries(full.rows, names, values, models)
