"""漸近中心ソルバ・総当たりオラクル・部分列不変性。"""

import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.accenter import (
    GridSpec,
    asymptotic_center,
    asymptotic_center_bruteforce,
    subsequence_center_invariance,
    tail_objective,
    window_sensitivity,
)
from src.accenter.simplex import project_simplex
from src.errors import DimensionMismatchError, InvalidParameterError
from src.generators.examples import make_example
from src.models import SequencePrefix
from src.sets import Box, Halfspace, Singleton, WholeSpace, contains

# 直角三角形の頂点を繰り返す列。制約 x ≤ 0.5 の下での中心は (0.5, 0)、半径² は 2.25
TRIANGLE = SequencePrefix([[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]] * 10, 15)
LEFT_OF_HALF = Halfspace(np.array([1.0, 0.0]), 0.5)


class TestSimplex:
    def test_interior_point_is_fixed(self):
        y = np.array([0.2, 0.3, 0.5])
        np.testing.assert_allclose(project_simplex(y), y)

    def test_far_vertex(self):
        np.testing.assert_allclose(project_simplex(np.array([2.0, 0.0, 0.0])), [1.0, 0.0, 0.0])

    @seed(41)
    @settings(max_examples=100, deadline=None)
    @given(y=arrays(np.float64, (5,), elements=st.floats(min_value=-10, max_value=10, allow_nan=False)))
    def test_lands_on_the_simplex(self, y):
        p = project_simplex(y)
        assert np.all(p >= 0.0)
        assert p.sum() == pytest.approx(1.0, abs=1e-9)
        np.testing.assert_allclose(project_simplex(p), p, atol=1e-12)


class TestSolver:
    def test_sign_flip_in_the_plane(self, sign_flip):
        res = asymptotic_center(sign_flip.seq, WholeSpace(2))
        assert res.converged
        assert float(np.linalg.norm(res.center)) ** 2 <= res.gap_certificate + 1e-12
        assert res.objective == pytest.approx(1.0, abs=1e-6)

    def test_constrained_center_is_exact_at_the_boundary(self):
        res = asymptotic_center(TRIANGLE, LEFT_OF_HALF)
        np.testing.assert_allclose(res.center, [0.5, 0.0], atol=1e-9)
        assert res.objective == pytest.approx(2.25)
        assert contains(LEFT_OF_HALF, res.center)

    def test_centroid_of_escaping_unit_vectors(self):
        case = make_example("unit-vectors", horizon=128, tail_start=64)
        res = asymptotic_center(case.seq, WholeSpace(128), solver_tol=1e-12)
        assert res.converged
        assert float(np.linalg.norm(res.center)) == pytest.approx(1.0 / 8.0, abs=1e-6)
        assert res.objective == pytest.approx(1.0 - 1.0 / 64.0, abs=1e-9)

    def test_result_dict(self, sign_flip):
        out = asymptotic_center(sign_flip.seq, sign_flip.sets["C"]).as_dict()
        assert out["tail_window"] == {"tail_start": 32, "tail_length": 32}
        assert out["phases"]["distinct_tail_points"] == 2
        assert out["center"] == [0.0, 0.0]

    def test_parameter_validation(self, sign_flip):
        with pytest.raises(InvalidParameterError):
            asymptotic_center(sign_flip.seq, WholeSpace(2), solver_tol=0.0)
        with pytest.raises(InvalidParameterError):
            asymptotic_center(sign_flip.seq, WholeSpace(2), tail_start=sign_flip.seq.length)
        with pytest.raises(DimensionMismatchError):
            asymptotic_center(sign_flip.seq, WholeSpace(3))


@seed(42)
@settings(max_examples=50, deadline=None)
@given(x=arrays(np.float64, (2,), elements=st.floats(min_value=-3, max_value=3, allow_nan=False)))
def test_objective_grows_quadratically_away_from_the_center(x):
    seq = SequencePrefix([[(-1.0) ** k, 0.0] for k in range(8)], 4)
    # 中心は原点、f_T(0) = 1
    assert tail_objective(seq, x) >= 1.0 + float(x @ x) - 1e-12


class TestBruteForce:
    def test_agrees_with_the_solver(self):
        grid = GridSpec(lower=[-1.0, -1.0], upper=[2.0, 2.0], pitch=0.01)
        brute = asymptotic_center_bruteforce(TRIANGLE, LEFT_OF_HALF, grid)
        solved = asymptotic_center(TRIANGLE, LEFT_OF_HALF).center
        assert float(np.linalg.norm(brute - solved)) <= 0.02

    def test_flat_box(self, sign_flip):
        grid = GridSpec(lower=[-0.2, -0.2], upper=[0.2, 0.2], pitch=1e-3)
        brute = asymptotic_center_bruteforce(sign_flip.seq, sign_flip.sets["C"], grid)
        np.testing.assert_allclose(brute, [0.0, 0.0], atol=1e-9)

    def test_set_outside_the_grid(self, sign_flip):
        grid = GridSpec(lower=[-1.0, -1.0], upper=[1.0, 1.0], pitch=0.5)
        brute = asymptotic_center_bruteforce(sign_flip.seq, Singleton(np.array([5.0, 5.0])), grid)
        np.testing.assert_allclose(brute, [5.0, 5.0])

    def test_limits(self, sign_flip, unit_vectors):
        grid = GridSpec(lower=[0.0], upper=[1.0], pitch=0.1)
        with pytest.raises(InvalidParameterError):
            asymptotic_center_bruteforce(unit_vectors.seq, WholeSpace(64), grid)
        with pytest.raises(DimensionMismatchError):
            asymptotic_center_bruteforce(sign_flip.seq, WholeSpace(2), grid)
        with pytest.raises(InvalidParameterError):
            asymptotic_center_bruteforce(
                sign_flip.seq, WholeSpace(2), GridSpec(lower=[0.0, 0.0], upper=[1.0, 1.0], pitch=0.0)
            )


class TestInvariance:
    def test_subsequences_share_the_center_under_opial(self, sign_flip):
        rep = subsequence_center_invariance(sign_flip.seq, sign_flip.sets["C"])
        assert set(rep.centers) == {"full", "stride2+0", "stride2+1"}
        assert rep.max_center_spread <= 1e-9
        assert rep.max_objective_spread <= 1e-9

    def test_subsequences_split_without_opial(self, sign_flip):
        rep = subsequence_center_invariance(sign_flip.seq, WholeSpace(2))
        assert rep.max_center_spread == pytest.approx(2.0, abs=1e-6)
        assert rep.objectives["stride2+0"] == pytest.approx(0.0, abs=1e-12)

    def test_window_sensitivity(self, sign_flip):
        out = window_sensitivity(sign_flip.seq, WholeSpace(2))
        assert out["windows"][0] == {"tail_start": 32, "tail_length": 32}
        assert out["windows"][1] == {"tail_start": 48, "tail_length": 16}
        assert out["shift"] <= 2e-5
        assert math.isfinite(out["shift"])
