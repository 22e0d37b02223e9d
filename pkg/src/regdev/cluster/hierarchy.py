"""Agglomerative clustering with Lance-Williams distance updates.

Heights follow the usual convention: Euclidean distance for average and
complete linkage, and for Ward ``sqrt(2 * increase in within-cluster sum of
squares)``, which reduces to the point distance for two singletons.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .kmeans import as_points


class Linkage(str, enum.Enum):
    WARD = "ward"
    AVERAGE = "average"
    COMPLETE = "complete"


@dataclass(frozen=True)
class Merge:
    a: int  # cluster ids: leaves are 0..n-1, merge t creates n + t
    b: int
    height: float
    size: int


@dataclass(frozen=True)
class DendrogramNode:
    id: int
    height: float = 0.0
    left: "DendrogramNode | None" = None
    right: "DendrogramNode | None" = None
    label: str | None = None
    size: int = 1

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def leaves(self) -> list[str]:
        if self.is_leaf:
            return [self.label]
        return self.left.leaves() + self.right.leaves()


@dataclass(frozen=True)
class Dendrogram:
    labels: tuple[str, ...]
    merges: tuple[Merge, ...]
    linkage: Linkage

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def heights(self) -> np.ndarray:
        return np.array([m.height for m in self.merges])

    def node_name(self, cid: int) -> str:
        return self.labels[cid] if cid < self.n else f"node{cid}"

    @property
    def root(self) -> DendrogramNode:
        nodes = {i: DendrogramNode(i, label=lab) for i, lab in enumerate(self.labels)}
        for t, m in enumerate(self.merges):
            nodes[self.n + t] = DendrogramNode(self.n + t, m.height, nodes.pop(m.a), nodes.pop(m.b), size=m.size)
        (root,) = nodes.values()
        return root

    def leaf_order(self) -> list[int]:
        """Leaf ids left to right in the drawn tree."""
        children = {self.n + t: (m.a, m.b) for t, m in enumerate(self.merges)}
        out, stack = [], [self.n + len(self.merges) - 1 if self.merges else 0]
        while stack:
            c = stack.pop()
            if c < self.n:
                out.append(c)
            else:
                a, b = children[c]
                stack += [b, a]
        return out

    def to_newick(self) -> str:
        def fmt(node: DendrogramNode, parent_h: float) -> str:
            branch = f":{parent_h - node.height:.6g}"
            if node.is_leaf:
                return _newick_label(node.label) + branch
            return f"({fmt(node.left, node.height)},{fmt(node.right, node.height)})" + branch
        r = self.root
        if r.is_leaf:
            return _newick_label(r.label) + ";"
        return f"({fmt(r.left, r.height)},{fmt(r.right, r.height)});"


def _newick_label(s: str) -> str:
    if any(ch in s for ch in " ,;:()[]'"):
        return "'" + s.replace("'", "''") + "'"
    return s


def _lw_update(linkage: Linkage, d_ki, d_kj, d_ij, n_i, n_j, n_k):
    if linkage is Linkage.COMPLETE:
        return np.maximum(d_ki, d_kj)
    if linkage is Linkage.AVERAGE:
        return (n_i * d_ki + n_j * d_kj) / (n_i + n_j)
    # Ward on squared distances
    t = n_i + n_j + n_k
    return ((n_i + n_k) * d_ki + (n_j + n_k) * d_kj - n_k * d_ij) / t


def agglomerate(points, linkage: Linkage | str = Linkage.WARD,
                labels: Sequence[str] | None = None) -> Dendrogram:
    """Merge the closest pair of clusters until one remains.

    Exact distance ties go to the pair with the smaller cluster ids.
    """
    linkage = Linkage(linkage)
    x = as_points(points)
    n = x.shape[0]
    if n < 2:
        raise ValueError("agglomerate needs at least 2 points")
    labels = tuple(str(l) for l in labels) if labels is not None else tuple(str(i) for i in range(n))
    if len(labels) != n:
        raise ValueError("one label per point required")

    diff = x[:, None, :] - x[None, :, :]
    d = np.einsum("ijd,ijd->ij", diff, diff)  # squared
    if linkage is not Linkage.WARD:
        d = np.sqrt(d)
    np.fill_diagonal(d, np.inf)

    slot_id = list(range(n))  # matrix slot -> current cluster id
    size = np.ones(n)
    alive = np.ones(n, dtype=bool)
    merges = []
    for t in range(n - 1):
        live = np.nonzero(alive)[0]
        sub = d[np.ix_(live, live)]
        best = sub.min()
        cand = np.argwhere(sub == best)
        pairs = sorted(
            (min(slot_id[live[i]], slot_id[live[j]]), max(slot_id[live[i]], slot_id[live[j]]), live[i], live[j])
            for i, j in cand if i < j
        )
        id_a, id_b, si, sj = pairs[0]
        if slot_id[si] != id_a:
            si, sj = sj, si
        height = float(np.sqrt(best)) if linkage is Linkage.WARD else float(best)
        merges.append(Merge(id_a, id_b, height, int(size[si] + size[sj])))

        others = live[(live != si) & (live != sj)]
        d_new = _lw_update(linkage, d[others, si], d[others, sj], d[si, sj], size[si], size[sj], size[others])
        d[others, si] = d_new
        d[si, others] = d_new
        alive[sj] = False
        d[sj, :] = np.inf
        d[:, sj] = np.inf
        size[si] += size[sj]
        slot_id[si] = n + t
    return Dendrogram(labels, tuple(merges), linkage)
