from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from regdev.cluster import InitMethod, init_centroids, kmeans_run
from regdev.cluster.kmeans import lloyd
from regdev.errors import NonFiniteInput, TooManyClusters


def _check_invariants(x, res):
    k = res.k
    assert res.assignments.shape == (x.shape[0],)
    assert np.all(res.sizes > 0)
    for c in range(k):
        assert np.allclose(res.centroids[c], x[res.assignments == c].mean(axis=0), atol=1e-12)
    d = ((x[:, None, :] - res.centroids[None]) ** 2).sum(-1)
    own = d[np.arange(len(x)), res.assignments]
    assert np.all(own <= d.min(axis=1) + 1e-9)
    assert res.wcss == pytest.approx(own.sum(), rel=1e-12, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(4, 7), st.integers(1, 2), st.integers(1, 3))
def test_reaches_exhaustive_optimum_on_tiny_sets(seed, n, dim, k):
    x = np.random.default_rng(seed).normal(size=(n, dim))
    res = kmeans_run(x, k, seed=seed, restarts=20)
    best, _ = oracles.best_partition(x, k)
    assert res.wcss == pytest.approx(best, rel=1e-9, abs=1e-12)
    _check_invariants(x, res)


@pytest.mark.parametrize("init", list(InitMethod))
def test_history_monotone_and_invariants(init):
    rng = np.random.default_rng(7)
    for trial in range(30):
        x = rng.normal(size=(int(rng.integers(10, 80)), int(rng.integers(1, 4))))
        res = kmeans_run(x, int(rng.integers(1, 7)), seed=trial, restarts=3, init=init)
        h = np.array(res.history)
        assert np.all(np.diff(h) <= 1e-9)
        assert res.converged and res.iterations < 300
        _check_invariants(x, res)


def test_deterministic_per_seed():
    x = np.random.default_rng(0).normal(size=(50, 2))
    a, b = kmeans_run(x, 4, seed=5, restarts=10), kmeans_run(x, 4, seed=5, restarts=10)
    assert np.array_equal(a.assignments, b.assignments) and a.wcss == b.wcss


def test_more_restarts_never_worse():
    x = np.random.default_rng(3).normal(size=(60, 2))
    w = [kmeans_run(x, 5, seed=1, restarts=r).wcss for r in (1, 5, 25)]
    assert w[0] >= w[1] >= w[2]


def test_duplicates_and_k_limits():
    x = np.array([[0.0], [0.0], [1.0], [1.0], [5.0]])
    res = kmeans_run(x, 3, restarts=5)
    assert res.wcss == 0.0
    with pytest.raises(TooManyClusters):
        kmeans_run(x, 4)
    with pytest.raises(NonFiniteInput):
        kmeans_run([[0.0], [np.nan]], 1)


def test_empty_cluster_repair():
    x = np.array([[0.0], [1.0], [2.0], [10.0]])
    # two centroids far away from every point: one cluster starts empty
    labels, cents, _, _, _ = lloyd(x, np.array([[100.0], [200.0]]))
    assert set(labels) == {0, 1}


def test_init_centroids_are_data_points():
    x = np.random.default_rng(1).normal(size=(20, 3))
    c = init_centroids(x, 4, seed=2)
    assert all(any(np.array_equal(ci, xi) for xi in x) for ci in c)
    assert len({tuple(ci) for ci in c}) == 4


def test_one_dimensional_restarts_reach_dp_optimum():
    from regdev.cluster import kmeans_1d_optimal

    rng = np.random.default_rng(31)
    for _ in range(15):
        v = np.concatenate([rng.normal(c, 1.0, size=int(rng.integers(3, 20))) for c in rng.uniform(0, 30, 4)])
        k = int(rng.integers(2, 7))
        assert kmeans_run(v, k, restarts=100).wcss == pytest.approx(kmeans_1d_optimal(v, k).wcss, abs=1e-9)


def test_translation_invariance():
    x = np.random.default_rng(8).normal(size=(40, 2))
    a = kmeans_run(x, 3, seed=4, restarts=5)
    b = kmeans_run(x + 1000.0, 3, seed=4, restarts=5)
    assert np.array_equal(a.assignments, b.assignments)
    assert a.wcss == pytest.approx(b.wcss, rel=1e-9)
