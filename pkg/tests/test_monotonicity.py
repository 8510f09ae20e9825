"""単調性クラスの分類・総和可能性・Robbins–Siegmund・有限長性・テスト点サンプラー。"""

import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.errors import DimensionMismatchError, InvalidParameterError, NonFiniteError
from src.models import SequencePrefix, Tolerance
from src.monotonicity import (
    ClassName,
    OpialReason,
    Status,
    classify,
    finite_length,
    robbins_siegmund_check,
    sample_test_points,
    simulate_recursion,
    summability_verdict,
)
from src.sets import Ball, Box, WholeSpace, contains


def _alternating(n: int = 20, tail_start: int = 10) -> SequencePrefix:
    return SequencePrefix([[(-1.0) ** k, 0.0] for k in range(n)], tail_start)


class TestClassify:
    def test_geometric_sequence_is_fejer(self):
        seq = SequencePrefix([[0.5**k, 0.0] for k in range(12)], 6)
        rep = classify(seq, [[0.0, 0.0], [-1.0, 0.0]])
        for name in ClassName:
            assert rep.status(name) is Status.HOLDS, name

    def test_equidistant_point_keeps_every_class(self):
        rep = classify(_alternating(), [[0.0, 0.0]])
        assert all(v.status is Status.HOLDS for v in rep.verdicts)

    def test_oscillating_distance_fails_with_witness(self):
        seq = _alternating()
        rep = classify(seq, [[0.5, 0.0]])
        fejer = rep.verdict(ClassName.FEJER)
        assert fejer.status is Status.FAILS
        w = fejer.witness
        assert (w.index, w.point_index) == (0, 0)
        assert w.magnitude == pytest.approx(1.0)
        # 証拠の不等式を列から再現できる
        c = np.array(w.point)
        d_n = np.linalg.norm(seq.points[w.index] - c)
        d_next = np.linalg.norm(seq.points[w.index + 1] - c)
        assert d_next - d_n > rep.tol.bound(d_n)

        assert rep.status(ClassName.FEJER_STAR) is Status.FAILS
        assert rep.verdict(ClassName.FEJER_STAR).witness.index >= seq.tail_start
        assert rep.status(ClassName.QUASI_FEJER_I) is Status.FAILS
        opial = rep.verdict(ClassName.OPIAL)
        assert opial.status is Status.FAILS
        assert opial.witness.magnitude == pytest.approx(1.0)

    def test_limit_tolerance_is_separate(self):
        seq = SequencePrefix([[1.0 + 1e-5 * (-1.0) ** k, 0.0] for k in range(16)], 8)
        assert classify(seq, [[0.0, 0.0]]).status(ClassName.OPIAL) is Status.FAILS
        loose = classify(seq, [[0.0, 0.0]], limit_tol=Tolerance(abs=1e-4, rel=0.0))
        assert loose.status(ClassName.OPIAL) is Status.HOLDS
        assert loose.status(ClassName.FEJER) is Status.FAILS

    def test_opial_reasons_separate_monotone_tails(self):
        # 1/(k+1) は裾で揺れ幅が許容幅を超えるが、単調に減るので Holds
        seq = SequencePrefix([[1.0 / (k + 1), 0.0] for k in range(16)], 8)
        rep = classify(seq, [[0.0, 0.0], [0.0, 3.0]])
        opial = rep.verdict(ClassName.OPIAL)
        assert opial.status is Status.HOLDS
        assert opial.details["reasons"] == [OpialReason.MONOTONE_TAIL.value] * 2
        assert opial.details["monotone_tail"] == [True, True]
        assert {lim["kind"] for lim in opial.details["limits"]} == {"Oscillates"}

        settled = classify(_alternating(), [[0.0, 0.0], [0.5, 0.0]]).verdict(ClassName.OPIAL)
        assert settled.details["reasons"] == ["converges", "oscillates"]
        assert settled.status is Status.FAILS
        assert settled.witness.point_index == 1

    def test_parallel_matches_serial(self, sign_flip):
        pts = next(iter(sign_flip.test_points.values()))
        serial = classify(sign_flip.seq, pts)
        parallel = classify(sign_flip.seq, pts, max_workers=4)
        assert serial.as_dict() == parallel.as_dict()

    def test_report_shape(self):
        rep = classify(_alternating(), [[0.5, 0.0]])
        out = rep.as_dict()
        assert [v["class"] for v in out["verdicts"]] == [n.value for n in ClassName]
        assert out["tail_start"] == 10
        assert out["notes"]

    def test_requires_points(self):
        with pytest.raises(InvalidParameterError):
            classify(_alternating(), np.zeros((0, 2)))

    def test_single_point_sequence(self):
        rep = classify(SequencePrefix([[1.0, 1.0]]), [[0.0, 0.0]])
        assert rep.status(ClassName.FEJER) is Status.HOLDS
        assert rep.status(ClassName.OPIAL) is Status.HOLDS


sequences = arrays(np.float64, (12, 2), elements=st.floats(min_value=-5, max_value=5, allow_nan=False))
test_sets = arrays(np.float64, (3, 2), elements=st.floats(min_value=-5, max_value=5, allow_nan=False))


@seed(31)
@settings(max_examples=60, deadline=None)
@given(points=sequences, centers=test_sets, tail=st.integers(min_value=0, max_value=11))
def test_hierarchy_is_consistent(points, centers, tail):
    rep = classify(SequencePrefix(points, tail), centers)
    if rep.status(ClassName.FEJER) is Status.HOLDS:
        assert all(v.status is Status.HOLDS for v in rep.verdicts)
    if rep.status(ClassName.FEJER_STAR) is Status.HOLDS:
        assert rep.status(ClassName.OPIAL) is Status.HOLDS
    for v in rep.verdicts:
        if v.status is Status.FAILS:
            assert v.witness is not None


@seed(32)
@settings(max_examples=40, deadline=None)
@given(start=arrays(np.float64, (2,), elements=st.floats(min_value=-5, max_value=5, allow_nan=False)),
       rate=st.floats(min_value=0.0, max_value=0.9))
def test_contractions_toward_a_point_are_fejer(start, rate):
    pts = [start * rate**k for k in range(10)]
    rep = classify(SequencePrefix(pts, 5), [[0.0, 0.0]])
    assert rep.status(ClassName.FEJER) is Status.HOLDS


class TestSummability:
    def test_zeros_hold(self):
        assert summability_verdict(np.zeros(10), 0).status is Status.HOLDS

    def test_constant_mass_fails(self):
        res = summability_verdict(np.ones(20), 0)
        assert res.status is Status.FAILS
        assert res.first_half_mass == res.second_half_mass == 10.0

    def test_geometric_decay_is_undecided(self):
        res = summability_verdict(0.5 ** np.arange(40), 0)
        assert res.status is Status.UNDECIDED
        assert res.argmax == 0

    def test_tail_is_respected(self):
        values = np.concatenate([np.ones(5), np.zeros(10)])
        assert summability_verdict(values, 5).status is Status.HOLDS
        assert summability_verdict(values, 0).status is not Status.HOLDS

    def test_empty_holds(self):
        assert summability_verdict(np.zeros(0), 0).status is Status.HOLDS


class TestRobbinsSiegmund:
    def test_simulated_recursion_meets_the_inequality(self):
        n = 60
        eps = 0.5 ** np.arange(n)
        alpha = simulate_recursion(1.0, np.zeros(n), np.zeros(n), eps)
        rep = robbins_siegmund_check(alpha, np.zeros(n), np.zeros(n), eps)
        assert rep.inequality_holds_all_n
        assert rep.witness is None
        assert rep.delta_summable is Status.HOLDS and rep.eps_summable is Status.HOLDS
        assert rep.conclusion_applies
        assert rep.alpha_verdict.converges
        assert rep.alpha_verdict.limit == pytest.approx(3.0, abs=1e-9)
        assert rep.beta_sum_bounded

    def test_beta_sum_is_bounded_by_telescoping(self):
        n = 40
        alpha = 1.0 / (np.arange(n) + 1.0)
        beta = np.append(alpha[:-1] - alpha[1:], 0.0)
        rep = robbins_siegmund_check(alpha, beta, np.zeros(n), np.zeros(n))
        assert rep.inequality_holds_all_n
        assert rep.beta_sum == pytest.approx(1.0 - 1.0 / n)
        assert rep.beta_sum_bounded

    def test_violation_witness(self):
        rep = robbins_siegmund_check([1.0, 2.0, 2.0], [0.0] * 3, [0.0] * 3, [0.0] * 3)
        assert not rep.inequality_holds_all_n
        assert not rep.conclusion_applies
        assert rep.witness == {"n": 0, "lhs": 2.0, "rhs": 1.0, "excess": 1.0}

    def test_input_validation(self):
        with pytest.raises(InvalidParameterError):
            robbins_siegmund_check([1.0, -1.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0])
        with pytest.raises(InvalidParameterError):
            robbins_siegmund_check([1.0, 1.0], [0.0], [0.0, 0.0], [0.0, 0.0])
        with pytest.raises(InvalidParameterError):
            robbins_siegmund_check([1.0], [0.0], [0.0], [0.0])
        with pytest.raises(NonFiniteError):
            robbins_siegmund_check([1.0, math.nan], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0])


class TestFiniteLength:
    def test_geometric_sequence_has_finite_length(self):
        rep = finite_length(SequencePrefix([[0.5**k, 0.0] for k in range(60)], 30))
        assert rep.summability is Status.HOLDS
        assert rep.increments_vanish
        assert rep.partial_sum == pytest.approx(1.0, abs=1e-12)

    def test_unit_vectors_do_not(self, unit_vectors):
        rep = finite_length(unit_vectors.seq)
        assert rep.summability is Status.FAILS
        assert rep.tail_max_increment == pytest.approx(math.sqrt(2.0))
        assert not rep.increments_vanish

    def test_needs_two_points(self):
        with pytest.raises(InvalidParameterError):
            finite_length(SequencePrefix([[0.0]]))


class TestSampler:
    def test_points_lie_in_the_set(self):
        ball = Ball(np.array([1.0, -1.0, 0.0]), 0.5)
        pts = sample_test_points(ball, 20)
        assert pts.shape == (20, 3)
        assert all(contains(ball, p) for p in pts)

    def test_deterministic_per_seed(self):
        box = Box(np.array([0.0, -1.0]), np.array([0.0, 1.0]))
        np.testing.assert_array_equal(sample_test_points(box, 8, seed=3), sample_test_points(box, 8, seed=3))
        assert not np.array_equal(sample_test_points(box, 8, seed=3), sample_test_points(box, 8, seed=4))

    def test_decay_shrinks_later_coordinates(self):
        pts = sample_test_points(WholeSpace(), 16, dim=6, decay=0.5)
        bounds = 2.0 * 0.5 ** np.arange(6)
        assert np.all(np.abs(pts) <= bounds + 1e-12)

    @pytest.mark.parametrize("kwargs", [{"count": 0}, {"seed": -1}, {"decay": 0.0}, {"decay": 1.5}])
    def test_parameter_validation(self, kwargs):
        args = {"count": 4, "dim": 2, **kwargs}
        with pytest.raises(InvalidParameterError):
            sample_test_points(WholeSpace(), **args)

    def test_dimension_is_required(self):
        with pytest.raises(DimensionMismatchError):
            sample_test_points(WholeSpace(), 4)
        with pytest.raises(DimensionMismatchError):
            sample_test_points(Ball(np.zeros(2), 1.0), 4, dim=3)
