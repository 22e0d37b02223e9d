"""Slow, independent reference implementations used only by the tests.

None of these import the code under test.
"""
from __future__ import annotations

import itertools
import math


def set_partitions(items, k):
    """All partitions of ``items`` into exactly ``k`` non-empty blocks."""
    items = list(items)
    if k == 0:
        if not items:
            yield []
        return
    if len(items) < k:
        return
    first, rest = items[0], items[1:]
    # first in its own block
    for p in set_partitions(rest, k - 1):
        yield [[first]] + p
    # first joins an existing block
    for p in set_partitions(rest, k):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def sse(block):
    dim = len(block[0])
    mean = [sum(p[d] for p in block) / len(block) for d in range(dim)]
    return sum(sum((p[d] - mean[d]) ** 2 for d in range(dim)) for p in block)


def best_partition(points, k):
    """Exhaustive minimum-WCSS partition (tiny inputs only)."""
    pts = [tuple(p) if hasattr(p, "__len__") else (float(p),) for p in points]
    best = None
    for part in set_partitions(range(len(pts)), k):
        w = sum(sse([pts[i] for i in block]) for block in part)
        if best is None or w < best[0]:
            best = (w, part)
    return best


def jacobi_eigenvalues(a, tol=1e-15, sweeps=100):
    """Cyclic Jacobi rotations on a symmetric matrix given as nested lists."""
    n = len(a)
    m = [list(map(float, row)) for row in a]
    for _ in range(sweeps):
        off = sum(m[i][j] ** 2 for i in range(n) for j in range(n) if i != j)
        if off < tol ** 2:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(m[p][q]) < 1e-300:
                    continue
                theta = (m[q][q] - m[p][p]) / (2 * m[p][q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                for k in range(n):
                    mkp, mkq = m[k][p], m[k][q]
                    m[k][p] = c * mkp - s * mkq
                    m[k][q] = s * mkp + c * mkq
                for k in range(n):
                    mpk, mqk = m[p][k], m[q][k]
                    m[p][k] = c * mpk - s * mqk
                    m[q][k] = s * mpk + c * mqk
    return sorted((m[i][i] for i in range(n)), reverse=True)


def pearson(xs, ys):
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    return cov / math.sqrt(vx * vy)


def correlation(columns):
    p = len(columns)
    return [[1.0 if i == j else pearson(columns[i], columns[j]) for j in range(p)] for i in range(p)]


def mean(xs):
    total = 0.0
    for x in xs:
        total += x
    return total / len(xs)


def _dist(a, b):
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def cluster_distance(A, B, pts, linkage):
    if linkage == "complete":
        return max(_dist(pts[a], pts[b]) for a in A for b in B)
    if linkage == "average":
        return sum(_dist(pts[a], pts[b]) for a in A for b in B) / (len(A) * len(B))
    # ward: sqrt(2 * merge cost) with merge cost |A||B|/(|A|+|B|) * |cA - cB|^2
    dim = len(pts[0])
    ca = [sum(pts[a][d] for a in A) / len(A) for d in range(dim)]
    cb = [sum(pts[b][d] for b in B) / len(B) for d in range(dim)]
    return math.sqrt(2 * len(A) * len(B) / (len(A) + len(B)) * sum((x - y) ** 2 for x, y in zip(ca, cb)))


def brute_linkage(points, linkage):
    """Recompute every inter-cluster distance from members at each step.

    Returns [(id_a, id_b, height)] using leaf ids 0..n-1 and n + t for merge t,
    ties to the smaller id pair.
    """
    pts = [tuple(p) for p in points]
    n = len(pts)
    clusters = {i: [i] for i in range(n)}
    merges = []
    for t in range(n - 1):
        best = None
        for a, b in itertools.combinations(sorted(clusters), 2):
            d = cluster_distance(clusters[a], clusters[b], pts, linkage)
            if best is None or d < best[0] - 1e-12:
                best = (d, a, b)
        d, a, b = best
        merges.append((a, b, d))
        clusters[n + t] = clusters.pop(a) + clusters.pop(b)
    return merges


def silhouette(points, labels):
    pts = [tuple(p) for p in points]
    ks = sorted(set(labels))
    total = 0.0
    for i, p in enumerate(pts):
        own = [j for j in range(len(pts)) if labels[j] == labels[i] and j != i]
        if not own:
            continue
        a = sum(_dist(p, pts[j]) for j in own) / len(own)
        b = min(
            sum(_dist(p, pts[j]) for j in range(len(pts)) if labels[j] == c)
            / sum(1 for j in range(len(pts)) if labels[j] == c)
            for c in ks if c != labels[i]
        )
        total += (b - a) / max(a, b)
    return total / len(pts)
