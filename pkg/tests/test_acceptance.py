"""受け入れ基準をそのまま確かめるテスト。"""

import math

import numpy as np
import pytest

from src.accenter import GridSpec, asymptotic_center, asymptotic_center_bruteforce
from src.cluster import orthogonality_check, weak_clusters_proxy
from src.config.numerics import ClassifierConfig
from src.generators import AveragedReflection, km_iteration, make_example, opial_limit_predictor
from src.models import SequencePrefix, Tolerance
from src.monotonicity import ClassName, Status, classify, robbins_siegmund_check, sample_test_points, simulate_recursion
from src.sets import Ball, WholeSpace, parse_box_shorthand, project_trace
from src.verify.checks import classify_case
from src.verify.report import to_json
from src.verify.runner import REPRODUCED, run_suite
from src.verify.scenarios import _random_combinations

pytestmark = pytest.mark.acceptance


def test_anchored_drift_traces_are_exact(anchored):
    _, d_y = project_trace(anchored.seq, anchored.sets["Y"])
    projected, d_c = project_trace(anchored.seq, anchored.sets["C"])
    n = np.arange(64)
    np.testing.assert_allclose(d_y, np.where(n % 2 == 0, 1.0, 0.0), rtol=0, atol=1e-12)
    np.testing.assert_allclose(d_c, np.where(n % 2 == 0, 1.0, math.sqrt(2.0) - 1.0), rtol=0, atol=1e-12)
    for k in range(1, 64, 2):
        expected = np.zeros(anchored.seq.dim)
        expected[[1, k + 1]] = 1.0 / math.sqrt(2.0)
        np.testing.assert_allclose(projected.points[k], expected, rtol=0, atol=1e-12)


@pytest.mark.parametrize("fixture_name, set_name", [("sign_flip", "C"), ("anchored", "C")])
def test_weak_cluster_differences_are_orthogonal(request, fixture_name, set_name):
    case = request.getfixturevalue(fixture_name)
    weak = weak_clusters_proxy(case.seq)
    assert len(weak) == 2
    rep = orthogonality_check(weak, case.sets[set_name], case.test_points[set_name], tol=1e-9)
    assert rep.passed, rep.as_dict()


@pytest.mark.parametrize("set_", [parse_box_shorthand("{0}xR"), WholeSpace(2)])
def test_solver_matches_grid_oracle(sign_flip, set_):
    grid = GridSpec(lower=[-0.2, -0.2], upper=[0.2, 0.2], pitch=1e-3)
    brute = asymptotic_center_bruteforce(sign_flip.seq, set_, grid)
    solved = asymptotic_center(sign_flip.seq, set_).center
    assert float(np.linalg.norm(brute - solved)) <= 1e-4


def test_centroid_law():
    case = make_example("unit-vectors", horizon=128, tail_start=64)
    center = asymptotic_center(case.seq, WholeSpace(case.seq.dim), solver_tol=1e-12).center
    assert float(np.linalg.norm(center)) == pytest.approx(1.0 / math.sqrt(64), abs=1e-6)


def _seeded_case(seed: int):
    """シードごとの小さな列と、その上で分類に使うテスト点。"""
    rng = np.random.default_rng(seed)
    kind = seed % 4
    if kind == 0:
        seq = SequencePrefix(np.cumsum(rng.normal(size=(16, 2)), axis=0), 8)
        return seq, rng.uniform(-3, 3, size=(6, 2)), None
    if kind == 1:
        ball = Ball(rng.normal(size=2), float(rng.uniform(0.2, 2.0)))
        case = km_iteration(
            AveragedReflection(ball, float(rng.uniform(0.1, 0.9))), rng.normal(scale=4.0, size=2),
            relaxation=float(rng.uniform(0.1, 1.0)), horizon=16, seed=seed,
        )
        return case.seq, case.test_points["FixT"], case
    if kind == 2:
        sign = np.where(np.arange(16) % 2 == 0, 1.0, -1.0)
        pts = np.stack([sign, rng.normal(scale=1e-3, size=16)], axis=1)
        return SequencePrefix(pts, 8), sample_test_points(WholeSpace(2), 6, seed=seed, dim=2), None
    seq = SequencePrefix((0.8 ** np.arange(16))[:, None] * rng.normal(size=(1, 3)), 8)
    return seq, rng.normal(size=(6, 3)), None


@pytest.mark.slow
def test_hierarchy_on_seeded_cases():
    for seed in range(200):
        seq, points, case = _seeded_case(seed)
        rep = classify(seq, points)
        if rep.status(ClassName.FEJER) is Status.HOLDS:
            assert all(v.status is Status.HOLDS for v in rep.verdicts), seed
        if rep.status(ClassName.FEJER_STAR) is Status.HOLDS:
            assert rep.status(ClassName.OPIAL) is Status.HOLDS, seed
        for v in rep.verdicts:
            if v.status is Status.FAILS:
                assert v.witness is not None, (seed, v.class_name)
        if case is not None:
            # KM 反復は不動点集合に関して Fejér 単調
            assert rep.status(ClassName.FEJER) is Status.HOLDS, seed


def test_sqrt_null_sits_strictly_inside_the_hierarchy(sqrt_null):
    rep = classify_case(sqrt_null, "zero")
    assert rep.status(ClassName.OPIAL) is Status.HOLDS
    fejer = rep.verdict(ClassName.FEJER)
    assert fejer.status is Status.FAILS
    n = fejer.witness.index
    values = sqrt_null.seq.points[:, 0]
    assert values[n + 1] - values[n] > rep.tol.bound(values[n])
    qf = rep.verdict(ClassName.QUASI_FEJER_I)
    assert qf.status in (Status.UNDECIDED, Status.FAILS)
    excess = np.asarray(qf.details["excess"])
    # 0 → 1/√k の上りの段だけが超過として残る
    k = np.arange(1, excess.shape[0] // 2 + 1)
    np.testing.assert_allclose(excess[0::2][: k.shape[0]], 1.0 / np.sqrt(k), rtol=1e-6)


@pytest.mark.parametrize("name, set_name", [("sign-flip-plane", "affC"), ("anchored-drift", "Y")])
def test_predictor_on_affine_combinations(name, set_name):
    case = make_example(name)
    pts = case.test_points[set_name]
    combos = _random_combinations(pts, 20, ClassifierConfig.SAMPLE_SEED)
    assert len(combos) >= 20
    for combo in combos:
        rep = opial_limit_predictor(case, combo)
        assert not rep.clamped
        assert rep.error is not None and rep.error <= 1e-6


def test_robbins_siegmund_geometric_instance():
    n = np.arange(64, dtype=np.float64)
    delta = eps = 2.0 ** (-n)
    beta = 2.0 ** (-n - 1.0)
    alpha = simulate_recursion(1.0, beta, delta, eps)
    rep = robbins_siegmund_check(alpha, beta, delta, eps, horizon_tol=Tolerance(abs=1e-9, rel=1e-9))
    assert rep.inequality_holds_all_n
    assert rep.conclusion_applies
    assert rep.alpha_verdict.converges
    assert rep.beta_sum <= rep.beta_bound


@pytest.mark.slow
def test_full_suite_is_green_and_deterministic():
    first, code = run_suite()
    assert code == 0, [(s.id, s.status) for s in first.scenarios if not s.ok]
    by_id = {s.id: s for s in first.scenarios}
    for sid in ("projection-weak-limit-not-strong", "affine-projection-sharpness", "projection-drift-without-fejer"):
        assert by_id[sid].status == REPRODUCED
    second, _ = run_suite()
    assert to_json(first) == to_json(second)
