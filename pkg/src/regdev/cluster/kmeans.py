"""Lloyd's k-means with k-means++ seeding, restarts and empty-cluster repair."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ..errors import NonFiniteInput, TooManyClusters


class InitMethod(str, enum.Enum):
    KMEANS_PP = "kmeans++"
    RANDOM_PARTITION = "random-partition"


@dataclass(frozen=True, eq=False)
class ClusterResult:
    k: int
    assignments: np.ndarray
    centroids: np.ndarray  # (k, d)
    wcss: float
    iterations: int = 0
    seed: int | None = None
    restarts: int = 1
    converged: bool = True
    history: tuple[float, ...] = field(default=(), repr=False)  # wcss after each iteration

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignments, minlength=self.k)


def as_points(points) -> np.ndarray:
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValueError("points must be a non-empty 1-D or 2-D array")
    if not np.isfinite(x).all():
        raise NonFiniteInput("points contain NaN or infinite values")
    return x


def distinct_count(x: np.ndarray) -> int:
    return len(np.unique(x, axis=0))


def _check_k(x: np.ndarray, k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n_distinct = distinct_count(x)
    if k > n_distinct:
        raise TooManyClusters(f"k={k} exceeds the {n_distinct} distinct point(s)")


def sq_distances(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = x[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def compute_wcss(x: np.ndarray, assignments: np.ndarray, centroids: np.ndarray) -> float:
    diff = x - centroids[assignments]
    return float(np.einsum("nd,nd->", diff, diff))


def cluster_means(x: np.ndarray, assignments: np.ndarray, k: int) -> np.ndarray:
    out = np.empty((k, x.shape[1]))
    for c in range(k):
        out[c] = x[assignments == c].mean(axis=0)
    return out


def init_centroids(points, k: int, seed: int | np.random.Generator | None = 0,
                   method: InitMethod | str = InitMethod.KMEANS_PP) -> np.ndarray:
    x = as_points(points)
    _check_k(x, k)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    method = InitMethod(method)
    n = x.shape[0]

    if method is InitMethod.RANDOM_PARTITION:
        order = rng.permutation(n)
        labels = np.empty(n, dtype=int)
        labels[order[:k]] = np.arange(k)
        labels[order[k:]] = rng.integers(0, k, size=n - k)
        return cluster_means(x, labels, k)

    chosen = [int(rng.integers(n))]
    d2 = sq_distances(x, x[chosen])[:, 0]
    for _ in range(1, k):
        total = d2.sum()
        # total > 0 while fewer than k distinct points are chosen
        idx = int(rng.choice(n, p=d2 / total))
        chosen.append(idx)
        d2 = np.minimum(d2, sq_distances(x, x[[idx]])[:, 0])
    return x[chosen].copy()


def _repair_empty(x, labels, centroids, k):
    """Move the point farthest from its centroid into each empty cluster."""
    for c in range(k):
        if np.any(labels == c):
            continue
        sizes = np.bincount(labels, minlength=k)
        d = np.einsum("nd,nd->n", x - centroids[labels], x - centroids[labels])
        d[sizes[labels] <= 1] = -1.0  # never empty another cluster
        far = int(np.argmax(d))
        labels[far] = c
        centroids[c] = x[far]
    return labels


def lloyd(x: np.ndarray, centroids: np.ndarray, max_iter: int = 300):
    """Alternate assignment and mean update until assignments stop changing.

    Returns (labels, centroids, iterations, converged, history).  A point only
    switches cluster on a strict distance improvement, which rules out
    tie-induced cycling.
    """
    k = centroids.shape[0]
    centroids = centroids.copy()
    labels = np.argmin(sq_distances(x, centroids), axis=1)
    labels = _repair_empty(x, labels, centroids, k)
    centroids = cluster_means(x, labels, k)
    history = [compute_wcss(x, labels, centroids)]
    rows = np.arange(x.shape[0])
    iterations, converged = 1, False
    while iterations < max_iter:
        d = sq_distances(x, centroids)
        best = np.argmin(d, axis=1)
        new = np.where(d[rows, best] < d[rows, labels], best, labels)
        new = _repair_empty(x, new, centroids, k)
        if np.array_equal(new, labels):
            converged = True
            break
        labels = new
        centroids = cluster_means(x, labels, k)
        history.append(compute_wcss(x, labels, centroids))
        iterations += 1
    return labels, centroids, iterations, converged, history


def kmeans_run(points, k: int, seed: int = 0, restarts: int = 100, max_iter: int = 300,
               init: InitMethod | str = InitMethod.KMEANS_PP) -> ClusterResult:
    """Best of ``restarts`` Lloyd runs by WCSS; ties go to the earliest restart.

    Restart ``r`` draws from ``default_rng([seed, r])`` so each restart is an
    independent, reproducible unit of work.
    """
    x = as_points(points)
    _check_k(x, k)
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    best = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        c0 = init_centroids(x, k, rng, init)
        labels, cents, its, conv, hist = lloyd(x, c0, max_iter)
        wcss = compute_wcss(x, labels, cents)
        if best is None or wcss < best[0]:
            best = (wcss, labels, cents, its, conv, hist)
    wcss, labels, cents, its, conv, hist = best
    return ClusterResult(k, labels, cents, wcss, its, seed, restarts, conv, tuple(hist))
