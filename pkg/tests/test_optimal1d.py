from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from regdev.cluster import kmeans_1d_optimal, kmeans_run
from regdev.errors import TooManyClusters


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-20, 20).map(lambda v: v / 4), min_size=2, max_size=8), st.integers(1, 4))
def test_matches_exhaustive_partition(vals, k):
    if k > len(set(vals)):
        with pytest.raises(TooManyClusters):
            kmeans_1d_optimal(vals, k)
        return
    res = kmeans_1d_optimal(vals, k)
    best, _ = oracles.best_partition(vals, k)
    assert res.wcss == pytest.approx(best, abs=1e-9)
    v = np.asarray(vals)
    # contiguous and ordered: every value of cluster c is below every value of c+1
    for c in range(k - 1):
        assert v[res.assignments == c].max() < v[res.assignments == c + 1].min()


def test_never_beaten_by_lloyd():
    rng = np.random.default_rng(4)
    for _ in range(20):
        v = rng.normal(size=40)
        k = int(rng.integers(2, 7))
        assert kmeans_1d_optimal(v, k).wcss <= kmeans_run(v, k, restarts=10).wcss + 1e-9


def test_equal_values_share_a_cluster():
    res = kmeans_1d_optimal([1, 1, 1, 2, 9, 9], 3)
    assert list(res.assignments) == [0, 0, 0, 1, 2, 2]
    assert res.wcss == 0.0
