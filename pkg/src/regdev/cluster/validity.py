"""Silhouette, Calinski-Harabasz and Davies-Bouldin indices (Euclidean)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateClustering, InvalidK
from .kmeans import as_points


@dataclass(frozen=True)
class ValidityScores:
    silhouette: float
    calinski_harabasz: float
    davies_bouldin: float


def _labels(assignments, n: int) -> tuple[np.ndarray, int]:
    a = np.asarray(assignments)
    if a.shape != (n,):
        raise DegenerateClustering(f"expected {n} assignments, got shape {a.shape}")
    if a.size and (a.min() < 0 or not np.issubdtype(a.dtype, np.integer)):
        raise DegenerateClustering("cluster ids must be non-negative integers")
    k = int(a.max()) + 1
    if k < 2:
        raise InvalidK(f"validity indices need k >= 2, got k={k}")
    if np.any(np.bincount(a, minlength=k) == 0):
        raise DegenerateClustering("cluster ids must be 0..k-1 with every cluster non-empty")
    return a, k


def silhouette_mean(x: np.ndarray, labels: np.ndarray, k: int) -> float:
    diff = x[:, None, :] - x[None, :, :]
    dist = np.sqrt(np.einsum("ijd,ijd->ij", diff, diff))
    sizes = np.bincount(labels, minlength=k)
    # per point, sum of distances to each cluster
    sums = np.zeros((x.shape[0], k))
    for c in range(k):
        sums[:, c] = dist[:, labels == c].sum(axis=1)
    s = np.zeros(x.shape[0])
    for i in range(x.shape[0]):
        own = labels[i]
        if sizes[own] == 1:
            continue  # singleton: silhouette 0
        a = sums[i, own] / (sizes[own] - 1)
        b = min(sums[i, c] / sizes[c] for c in range(k) if c != own)
        top = max(a, b)
        s[i] = 0.0 if top == 0 else (b - a) / top
    return float(s.mean())


def calinski_harabasz(x: np.ndarray, labels: np.ndarray, k: int) -> float:
    n = x.shape[0]
    if n <= k:
        raise DegenerateClustering(f"Calinski-Harabasz needs n > k (n={n}, k={k})")
    overall = x.mean(axis=0)
    between = within = 0.0
    for c in range(k):
        pts = x[labels == c]
        cen = pts.mean(axis=0)
        between += len(pts) * float(np.sum((cen - overall) ** 2))
        within += float(np.sum((pts - cen) ** 2))
    if within == 0:
        return np.inf if between > 0 else 0.0
    return (between / (k - 1)) / (within / (n - k))


def davies_bouldin(x: np.ndarray, labels: np.ndarray, k: int) -> float:
    cents = np.array([x[labels == c].mean(axis=0) for c in range(k)])
    scatter = np.array([
        np.sqrt(((x[labels == c] - cents[c]) ** 2).sum(axis=1)).mean() for c in range(k)
    ])
    worst = np.zeros(k)
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            sep = float(np.sqrt(((cents[i] - cents[j]) ** 2).sum()))
            if sep == 0:
                raise DegenerateClustering(f"clusters {i} and {j} share a centroid")
            worst[i] = max(worst[i], (scatter[i] + scatter[j]) / sep)
    return float(worst.mean())


def validity_indices(points, assignments) -> ValidityScores:
    x = as_points(points)
    labels, k = _labels(assignments, x.shape[0])
    return ValidityScores(
        silhouette=silhouette_mean(x, labels, k),
        calinski_harabasz=calinski_harabasz(x, labels, k),
        davies_bouldin=davies_bouldin(x, labels, k),
    )
