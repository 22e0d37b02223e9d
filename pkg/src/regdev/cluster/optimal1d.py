"""Exact univariate k-means by dynamic programming.

Optimal 1-D clusters are contiguous runs of the sorted values, so the best
partition of the first ``j`` distinct values into ``q`` groups satisfies

    D[q][j] = min_{i < j} D[q-1][i] + cost(i, j)

where ``cost`` is the weighted sum of squares of distinct values ``i..j-1``.
Working on distinct values (weighted by multiplicity) keeps equal values in
one cluster.  O(k * m^2) for m distinct values.
"""
from __future__ import annotations

import numpy as np

from ..errors import TooManyClusters
from .kmeans import ClusterResult, as_points, compute_wcss


def _segment_cost(cw, cwx, cwxx, i, j):
    w = cw[j] - cw[i]
    s = cwx[j] - cwx[i]
    return np.maximum(cwxx[j] - cwxx[i] - s * s / w, 0.0)


def kmeans_1d_optimal(values, k: int) -> ClusterResult:
    x = as_points(values)
    if x.shape[1] != 1:
        raise ValueError("kmeans_1d_optimal needs one-dimensional input")
    v = x[:, 0]
    uniq, inverse, counts = np.unique(v, return_inverse=True, return_counts=True)
    m = len(uniq)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > m:
        raise TooManyClusters(f"k={k} exceeds the {m} distinct value(s)")

    shift = uniq - uniq.mean()  # centering keeps the prefix sums well conditioned
    w = counts.astype(float)
    cw = np.concatenate([[0.0], np.cumsum(w)])
    cwx = np.concatenate([[0.0], np.cumsum(w * shift)])
    cwxx = np.concatenate([[0.0], np.cumsum(w * shift * shift)])

    cost = np.full((k + 1, m + 1), np.inf)
    back = np.zeros((k + 1, m + 1), dtype=int)
    cost[0, 0] = 0.0
    for q in range(1, k + 1):
        for j in range(q, m - (k - q) + 1):
            i = np.arange(q - 1, j)
            cand = cost[q - 1, i] + _segment_cost(cw, cwx, cwxx, i, j)
            b = int(np.argmin(cand))  # first minimum: deterministic
            cost[q, j] = cand[b]
            back[q, j] = i[b]

    # recover boundaries, cluster 0 holds the smallest values
    bounds = [m]
    j = m
    for q in range(k, 0, -1):
        j = back[q, j]
        bounds.append(j)
    bounds = bounds[::-1]
    group_of_distinct = np.empty(m, dtype=int)
    for c in range(k):
        group_of_distinct[bounds[c]:bounds[c + 1]] = c
    labels = group_of_distinct[inverse]
    centroids = np.array([[v[labels == c].mean()] for c in range(k)])
    return ClusterResult(k, labels, centroids, compute_wcss(x, labels, centroids),
                         iterations=0, seed=None, restarts=0)
