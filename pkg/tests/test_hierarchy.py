from __future__ import annotations

import numpy as np
import pytest

import oracles
from regdev.cluster import Linkage, agglomerate


@pytest.mark.parametrize("linkage", list(Linkage))
def test_matches_brute_force(linkage):
    rng = np.random.default_rng(12)
    for _ in range(25):
        x = rng.normal(size=(int(rng.integers(2, 10)), int(rng.integers(1, 4))))
        got = agglomerate(x, linkage).merges
        ref = oracles.brute_linkage(x, linkage.value)
        assert [(m.a, m.b) for m in got] == [(a, b) for a, b, _ in ref]
        assert np.allclose([m.height for m in got], [h for _, _, h in ref], rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("linkage", list(Linkage))
def test_matches_scipy_heights(linkage):
    from scipy.cluster.hierarchy import linkage as sp_linkage

    x = np.random.default_rng(3).normal(size=(15, 3))
    tree = agglomerate(x, linkage)
    z = sp_linkage(x, method=linkage.value)
    assert np.allclose(tree.heights, z[:, 2], atol=1e-10)
    assert [m.size for m in tree.merges] == [int(s) for s in z[:, 3]]


def test_tree_structure():
    x = np.array([[0.0], [1.0], [5.0], [5.5]])
    t = agglomerate(x, "average", labels=["a", "b", "c", "d"])
    assert [(m.a, m.b) for m in t.merges] == [(2, 3), (0, 1), (4, 5)]
    assert sorted(t.root.leaves()) == ["a", "b", "c", "d"]
    assert t.leaf_order() == [2, 3, 0, 1]
    assert t.to_newick().startswith("((c:")


def test_ties_pick_smallest_ids():
    t = agglomerate(np.array([[0.0], [1.0], [2.0], [3.0]]), "complete")
    assert (t.merges[0].a, t.merges[0].b) == (0, 1)
    assert (t.merges[1].a, t.merges[1].b) == (2, 3)
