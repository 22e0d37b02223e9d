"""Ordered rating labels for clusters."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..index import orient_columns, symmetric_eigh
from .kmeans import ClusterResult, as_points

RATINGS_4 = ("Low", "Medium", "High", "Very High")


def rating_names(k: int) -> tuple[str, ...]:
    if k == 4:
        return RATINGS_4
    return tuple(f"C{i + 1}" for i in range(k))


@dataclass(frozen=True, eq=False)
class RatedClusters:
    result: ClusterResult
    order: tuple[int, ...]  # cluster ids, lowest rating first
    names: tuple[str, ...]  # names[rank]

    @property
    def label_of_cluster(self) -> dict[int, str]:
        return {cid: self.names[rank] for rank, cid in enumerate(self.order)}

    @property
    def rank_of_cluster(self) -> dict[int, int]:
        return {cid: rank for rank, cid in enumerate(self.order)}

    @property
    def row_labels(self) -> list[str]:
        lookup = self.label_of_cluster
        return [lookup[int(c)] for c in self.result.assignments]


def first_axis(points) -> np.ndarray:
    """Leading principal axis of the points' covariance, loading sum >= 0."""
    x = as_points(points)
    cov = np.atleast_2d(np.cov(x, rowvar=False, bias=True))
    _, vec = symmetric_eigh(cov)
    return orient_columns(vec[:, :1])[:, 0]


def label_clusters(result: ClusterResult, points=None) -> RatedClusters:
    """Rank clusters by centroid position and attach rating names.

    1-D centroids are ranked by value.  Multi-dimensional centroids are ranked
    by their projection on the data's first principal axis, so ``points`` is
    required there.  Ties go to the lower cluster id.
    """
    cents = np.asarray(result.centroids, dtype=float)
    if cents.shape[1] == 1:
        key = cents[:, 0]
    else:
        if points is None:
            raise ValueError("multi-dimensional labelling needs the clustered points")
        key = cents @ first_axis(points)
    order = tuple(int(c) for c in sorted(range(result.k), key=lambda c: (key[c], c)))
    return RatedClusters(result, order, rating_names(result.k))
