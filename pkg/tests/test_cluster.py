"""強クラスタ点・弱クラスタ代理の抽出と直交性検査。"""

import numpy as np
import pytest

from src.cluster import extract_clusters, orthogonality_check, strong_clusters, weak_clusters_proxy
from src.errors import InvalidParameterError, SampleOutsideSetError
from src.models import SequencePrefix
from src.sets import Box, WholeSpace


def _as_lists(points):
    return [[float(v) for v in p] for p in points]


class TestStrongClusters:
    def test_sign_flip_has_two_recurring_points(self, sign_flip):
        found = strong_clusters(sign_flip.seq)
        assert _as_lists(c.center for c in found) == [[-1.0, 0.0], [1.0, 0.0]]
        assert [c.count for c in found] == [16, 16]

    def test_unit_vectors_have_none(self, unit_vectors):
        assert strong_clusters(unit_vectors.seq) == []

    def test_rare_points_are_dropped(self, sqrt_null):
        found = strong_clusters(sqrt_null.seq)
        assert _as_lists(c.center for c in found) == [[0.0]]

    def test_recurrence_threshold(self):
        seq = SequencePrefix([[0.0], [1.0], [0.0], [1.0], [0.0]])
        assert _as_lists(c.center for c in strong_clusters(seq, recurrence=3)) == [[0.0]]
        assert len(strong_clusters(seq, recurrence=2)) == 2

    def test_merge_radius_must_be_positive(self, sign_flip):
        with pytest.raises(InvalidParameterError):
            strong_clusters(sign_flip.seq, merge_radius=0.0)


class TestWeakProxy:
    def test_unit_vectors_are_weakly_null(self, unit_vectors):
        found = weak_clusters_proxy(unit_vectors.seq)
        assert len(found) == 1
        np.testing.assert_array_equal(found[0], np.zeros(64))

    def test_sign_flip_subsequence_limits(self, sign_flip):
        assert _as_lists(weak_clusters_proxy(sign_flip.seq)) == [[-1.0, 0.0], [1.0, 0.0]]

    def test_anchored_drift_limits(self, anchored):
        found = weak_clusters_proxy(anchored.seq)
        dim = anchored.seq.dim
        e1 = np.zeros(dim)
        e1[1] = 1.0
        e01 = e1.copy()
        e01[0] = 1.0
        assert len(found) == 2
        np.testing.assert_array_equal(found[0], e1)
        np.testing.assert_array_equal(found[1], e01)

    def test_convergent_sequence(self):
        seq = SequencePrefix([[2.0 + 0.5**k, -1.0] for k in range(30)], 15)
        found = weak_clusters_proxy(seq)
        assert len(found) == 1
        np.testing.assert_allclose(found[0], [2.0, -1.0], atol=1e-3)


class TestExtract:
    def test_method_metadata(self, sign_flip):
        clusters = extract_clusters(sign_flip.seq)
        assert clusters.method["tail_start"] == sign_flip.seq.tail_start
        assert clusters.method["accepted_subsequences"] == [
            {"stride": 2, "offset": 0},
            {"stride": 2, "offset": 1},
        ]
        assert clusters.strong_within_weak()
        out = clusters.as_dict()
        assert out["weak_proxy"] == [[-1.0, 0.0], [1.0, 0.0]]
        assert [c["count"] for c in out["strong"]] == [16, 16]


class TestOrthogonality:
    def test_differences_are_orthogonal_to_the_set(self, sign_flip):
        weak = weak_clusters_proxy(sign_flip.seq)
        c = sign_flip.sets["C"]
        rep = orthogonality_check(weak, c, sign_flip.test_points["C"])
        assert rep.passed
        assert rep.max_abs_inner == 0.0

    def test_whole_space_breaks_orthogonality(self, sign_flip):
        weak = weak_clusters_proxy(sign_flip.seq)
        rep = orthogonality_check(weak, WholeSpace(2), [[0.0, 0.0], [1.0, 0.0]])
        assert not rep.passed
        assert rep.max_abs_inner == pytest.approx(2.0)
        assert rep.as_dict()["argmax"] == {"weak_pair": [0, 1], "sample_pair": [0, 1]}

    def test_vacuous_with_one_point(self):
        rep = orthogonality_check([np.zeros(2)], WholeSpace(2), [[0.0, 0.0]])
        assert rep.passed
        assert rep.note

    def test_samples_must_be_in_the_set(self):
        box = Box(np.array([0.0, -1.0]), np.array([0.0, 1.0]))
        with pytest.raises(SampleOutsideSetError):
            orthogonality_check([np.zeros(2), np.ones(2)], box, [[0.0, 0.0], [1.0, 0.0]])
