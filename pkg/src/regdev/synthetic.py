"""Synthetic fixtures: indicator panels, planted blobs and grid boundaries.

Real provincial data is not redistributable, so tests and demos run on panels
drawn from a one-factor model: each region has a latent development level
that drives every indicator (negatively for negative-polarity ones).
"""
from __future__ import annotations

import csv
import json
import os
from typing import Sequence

import numpy as np

from .panel import DATA_HEADER, DEFAULT_INDICATORS, IndicatorPanel, IndicatorSpec, Polarity, Region

# rough (mean, sd) scale per indicator, loosely after the published summary
_SCALE = {
    "gdp_pc": (6849.1, 2919.3), "cars": (101.1, 58.6), "plant_prod": (390168.0, 512215.5),
    "animal_prod": (137030.2, 193400.0), "housing_sales": (16924.6, 32991.8),
    "electricity": (2550.2, 1707.3), "net_exports": (-562713.0, 5560981.6),
    "net_migration": (-3.3, 10.0), "age_dependency": (52.1, 9.0), "pop_growth": (10.0, 20.0),
    "hospital_beds": (268.6, 95.9), "physicians": (1.6, 0.6), "infant_mortality": (11.0, 4.0),
    "primary_enrollment": (93.6, 4.0), "sewerage": (85.5, 12.0), "college_grads": (12.0, 4.0),
}


def make_panel(
    n_regions: int = 81,
    years: Sequence[int] = tuple(range(2000, 2023)),
    spec: Sequence[IndicatorSpec] = DEFAULT_INDICATORS,
    seed: int = 0,
    loading: float = 0.8,
    trend: float = 0.02,
    missing_rate: float = 0.0,
) -> IndicatorPanel:
    """One-factor synthetic panel.

    ``loading`` is the correlation of each standardized indicator with the
    latent level; 0.8 gives a dominant first component.
    """
    rng = np.random.default_rng(seed)
    level = rng.normal(size=n_regions)
    regions = tuple(Region(str(i + 1), f"Region {i + 1:02d}") for i in range(n_regions))
    noise_sd = float(np.sqrt(max(1.0 - loading ** 2, 0.0)))
    cube = np.empty((n_regions, len(years), len(spec)))
    for t in range(len(years)):
        latent = level + trend * t + 0.05 * rng.normal(size=n_regions)
        for j, s in enumerate(spec):
            sign = -1.0 if s.polarity is Polarity.NEGATIVE else 1.0
            z = sign * loading * latent + noise_sd * rng.normal(size=n_regions)
            mu, sd = _SCALE.get(s.id, (0.0, 1.0))
            vals = mu + sd * z
            if "%" in s.unit:
                vals = np.clip(vals, 0.0, 100.0)
            cube[:, t, j] = np.round(vals, 3)
    if missing_rate > 0:
        cube[rng.random(cube.shape) < missing_rate] = np.nan
    return IndicatorPanel(regions, tuple(int(y) for y in years), tuple(spec), cube)


def planted_blobs(n: int = 81, centers: int = 4, separation: float = 10.0, sd: float = 1.0,
                  dim: int | None = None, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Gaussian blobs on the vertices of a regular simplex, randomly rotated.

    Every pair of centers is exactly ``separation * sd`` apart.  Points are
    split as evenly as possible.  Returns (points, true labels).
    """
    rng = np.random.default_rng(seed)
    dim = dim or centers - 1
    if dim < centers - 1:
        raise ValueError("a regular simplex of c vertices needs dim >= c - 1")
    # unit simplex: standard basis in R^c, centred, then embedded in R^dim
    basis = np.eye(centers) - 1.0 / centers
    u, _, _ = np.linalg.svd(basis)
    verts = basis @ u[:, : centers - 1]
    verts *= separation * sd / np.sqrt(2.0)
    emb = np.zeros((centers, dim))
    emb[:, : centers - 1] = verts
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    emb = emb @ q
    labels = np.arange(n) % centers
    rng.shuffle(labels)
    pts = emb[labels] + sd * rng.normal(size=(n, dim))
    return pts, labels


def grid_boundaries(codes: Sequence[str], path: str | os.PathLike | None = None,
                    names: dict[str, str] | None = None, columns: int = 9) -> dict:
    """Unit-square polygons on a grid, one per region code."""
    features = []
    for i, code in enumerate(codes):
        x0, y0 = float(i % columns), float(-(i // columns))
        ring = [[x0, y0], [x0 + 1, y0], [x0 + 1, y0 + 1], [x0, y0 + 1], [x0, y0]]
        props = {"code": code}
        if names:
            props["name"] = names.get(code, code)
        features.append({"type": "Feature", "properties": props,
                         "geometry": {"type": "Polygon", "coordinates": [ring]}})
    fc = {"type": "FeatureCollection", "features": features}
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(fc, fh)
    return fc


def write_rows(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(DATA_HEADER)
        w.writerows(rows)
