from __future__ import annotations

import numpy as np
import pytest

from regdev.cluster import elbow_detect, elbow_strengths, select_k
from regdev.errors import CurveTooShort, NonMonotoneCurve
from regdev.synthetic import planted_blobs


def test_strengths_by_hand():
    s = elbow_strengths([100.0, 60.0, 30.0, 25.0, 22.0])
    assert s == {2: 10.0, 3: 25.0, 4: 2.0}


def test_clear_elbow():
    e = elbow_detect([100.0, 60.0, 30.0, 25.0, 22.0])
    assert (e.k, e.ambiguous, e.candidates) == (3, False, (3,))


def test_ambiguous_elbow_lists_candidates():
    # strengths: k2 = 10, k3 = 12, k4 = 8
    e = elbow_detect([100.0, 70.0, 50.0, 42.0, 42.0])
    assert (e.k, e.ambiguous, e.candidates) == (3, True, (3, 2, 4))


def test_tie_goes_to_smaller_k():
    e = elbow_detect([10.0, 6.0, 3.0, 1.0, 0.0])
    # strengths k2 = 1, k3 = 1, k4 = 1
    assert e.k == 2 and e.candidates == (2, 3, 4)


def test_straight_line_has_no_elbow():
    e = elbow_detect([4.0, 3.0, 2.0, 1.0])
    assert e.k is None and e.ambiguous


def test_curve_errors():
    with pytest.raises(CurveTooShort):
        elbow_detect([3.0, 1.0])
    with pytest.raises(NonMonotoneCurve):
        elbow_detect([3.0, 1.0, 2.0])


def test_select_k_on_planted_blobs():
    pts, _ = planted_blobs(n=81, centers=4, separation=10.0, seed=2)
    rep = select_k(pts, k_max=8, seed=0, restarts=10)
    assert rep.elbow.k == 4
    ks = sorted(rep.wcss)
    assert ks == list(range(1, 9))
    assert all(rep.wcss[a] >= rep.wcss[b] for a, b in zip(ks, ks[1:]))
    assert max(rep.validity, key=lambda k: rep.validity[k].silhouette) == 4


def test_select_k_caps_at_distinct_points():
    rep = select_k(np.array([0.0, 0.0, 1.0, 5.0, 9.0]), k_max=10, restarts=3)
    assert max(rep.wcss) == 4
    with pytest.raises(CurveTooShort):
        select_k(np.array([0.0, 1.0, 1.0]), k_max=10)


def test_worked_example_unambiguous():
    e = elbow_detect([100.0, 40.0, 20.0, 15.0, 13.0, 12.0])
    assert e.strengths == {2: 40.0, 3: 15.0, 4: 3.0, 5: 1.0}
    assert (e.k, e.ambiguous) == (2, False)


def test_validity_peaks_at_planted_k():
    pts, _ = planted_blobs(n=81, centers=4, separation=12.0, seed=9)
    rep = select_k(pts, k_max=8, restarts=10)
    for name in ("silhouette", "calinski_harabasz"):
        assert max(rep.validity, key=lambda k: getattr(rep.validity[k], name)) == 4
    for v in rep.validity.values():
        assert -1 <= v.silhouette <= 1 and v.calinski_harabasz >= 0 and v.davies_bouldin >= 0
