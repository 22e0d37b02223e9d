from __future__ import annotations

import numpy as np
import pytest

import oracles
from regdev.cluster import validity_indices
from regdev.errors import DegenerateClustering, InvalidK


def test_four_point_closed_forms():
    v = validity_indices([0.0, 0.1, 10.0, 10.1], [0, 0, 1, 1])
    # a = 0.1, b = 10 or 10.1 averaged -> silhouette 1 - a / b per point
    sil = np.mean([1 - 0.1 / 10.05, 1 - 0.1 / 9.95, 1 - 0.1 / 9.95, 1 - 0.1 / 10.05])
    assert v.silhouette == pytest.approx(sil, abs=1e-12)
    # between = 4 * 25 = 100, within = 4 * 0.05^2 = 0.01
    assert v.calinski_harabasz == pytest.approx((100.0 / 1) / (0.01 / 2), rel=1e-9)
    assert v.davies_bouldin == pytest.approx(0.1 / 10.0, rel=1e-9)


def test_against_reference_implementations():
    from sklearn.metrics import calinski_harabasz_score, davies_bouldin_score

    rng = np.random.default_rng(9)
    x = rng.normal(size=(30, 2))
    lab = np.arange(30) % 3
    v = validity_indices(x, lab)
    assert v.silhouette == pytest.approx(oracles.silhouette(x, list(lab)), abs=1e-12)
    assert v.calinski_harabasz == pytest.approx(calinski_harabasz_score(x, lab), rel=1e-10)
    assert v.davies_bouldin == pytest.approx(davies_bouldin_score(x, lab), rel=1e-10)


def test_singleton_silhouette_is_zero():
    v = validity_indices([0.0, 1.0, 1.2], [0, 1, 1])
    assert v.silhouette == pytest.approx(oracles.silhouette([(0.0,), (1.0,), (1.2,)], [0, 1, 1]))


def test_errors():
    with pytest.raises(InvalidK):
        validity_indices([0.0, 1.0], [0, 0])
    with pytest.raises(DegenerateClustering):
        validity_indices([0.0, 1.0, 2.0], [0, 2, 2])
    with pytest.raises(DegenerateClustering):
        validity_indices([0.0, 1.0], [0, 1])
    with pytest.raises(DegenerateClustering):
        validity_indices([0.0, 2.0, 1.0, 1.0], [0, 0, 1, 1])


def test_zero_within_scatter():
    assert validity_indices([0.0, 0.0, 5.0], [0, 0, 1]).calinski_harabasz == np.inf
