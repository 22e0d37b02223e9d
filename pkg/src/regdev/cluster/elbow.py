"""Elbow detection on a WCSS curve and the k-selection report."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import CurveTooShort, DegenerateClustering, NonMonotoneCurve
from .kmeans import as_points, distinct_count, kmeans_run
from .validity import ValidityScores, validity_indices

AMBIGUITY_RATIO = 0.5


@dataclass(frozen=True)
class Elbow:
    k: int | None  # None when no second difference is positive
    ambiguous: bool
    candidates: tuple[int, ...]  # winner first, then runners-up by strength
    strengths: dict[int, float]


def elbow_strengths(wcss: Sequence[float]) -> dict[int, float]:
    w = np.asarray(wcss, dtype=float)
    # w[0] is k = 1
    return {k: float((w[k - 2] - w[k - 1]) - (w[k - 1] - w[k])) for k in range(2, len(w))}


def elbow_detect(wcss: Sequence[float], ratio: float = AMBIGUITY_RATIO) -> Elbow:
    """Pick k with the largest drop in WCSS improvement.

    ``wcss[i]`` is the curve value at k = i + 1.  Any other k whose strength
    reaches ``ratio`` times the winner's is reported as a candidate and marks
    the result ambiguous.
    """
    w = np.asarray(wcss, dtype=float)
    if w.ndim != 1 or len(w) < 3:
        raise CurveTooShort(f"need WCSS for at least k = 1..3, got {len(w)} value(s)")
    if not np.isfinite(w).all():
        raise NonMonotoneCurve("curve contains non-finite values")
    rises = np.nonzero(np.diff(w) > 1e-9)[0]
    if rises.size:
        k = int(rises[0]) + 2
        raise NonMonotoneCurve(f"WCSS increases from k={k - 1} to k={k}")

    strengths = elbow_strengths(w)
    ranked = sorted(strengths, key=lambda k: (-strengths[k], k))
    best = ranked[0]
    floor = 1e-12 * max(abs(w[0]), 1.0)
    if strengths[best] <= floor:
        return Elbow(None, True, (), strengths)
    cands = [k for k in ranked if strengths[k] >= ratio * strengths[best]]
    return Elbow(best, len(cands) > 1, tuple(cands), strengths)


@dataclass
class KSelectionReport:
    wcss: dict[int, float]
    elbow: Elbow
    validity: dict[int, ValidityScores] = field(default_factory=dict)

    @property
    def k_max(self) -> int:
        return max(self.wcss)


def select_k(points, k_max: int = 10, seed: int = 0, restarts: int = 100,
             max_iter: int = 300) -> KSelectionReport:
    """Run k-means for k = 1..k_max and summarise the curve and validity indices.

    ``k_max`` is capped at the number of distinct points.
    """
    x = as_points(points)
    k_max = min(k_max, distinct_count(x))
    if k_max < 3:
        raise CurveTooShort(f"only {k_max} usable k value(s); elbow needs 3")
    wcss: dict[int, float] = {}
    validity: dict[int, ValidityScores] = {}
    prev = np.inf
    for k in range(1, k_max + 1):
        res = kmeans_run(x, k, seed=seed, restarts=restarts, max_iter=max_iter)
        # a heuristic run can land above the previous k; the curve is defined
        # through best-known values so it stays non-increasing
        wcss[k] = min(res.wcss, prev)
        prev = wcss[k]
        if k >= 2:
            try:
                validity[k] = validity_indices(x, res.assignments)
            except DegenerateClustering:
                pass
    return KSelectionReport(wcss, elbow_detect([wcss[k] for k in sorted(wcss)]), validity)
