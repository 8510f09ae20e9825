"""
src.verify.scenarios

定理ハーネスのシナリオ登録簿。シナリオは 1 つの結果キー（result_key）を引用し、
仮説の検査 → 結論の検査 の順に CheckResult を返す。

- expectation=Pass: すべての検査が通れば pass
- expectation=ExpectedCounterexample: 仮説がすべて通り、結論がすべて破れれば reproduced
  （鋭さの主張を回帰テストとして保つための反例シナリオ）

弱収束に関する検査は座標ごとの裾極限による代理（proxy）で行い、許容誤差も別に記録する。
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from src.accenter.invariance import subsequence_center_invariance
from src.accenter.solver import asymptotic_center
from src.cluster.extract import strong_clusters, weak_clusters_proxy
from src.cluster.orthogonality import orthogonality_check
from src.config.harness import GeneratorConfig, HarnessConfig
from src.config.numerics import ClassifierConfig, NumericsConfig
from src.errors import UnknownNameError
from src.generators.cases import GeneratedCase
from src.generators.examples import example_names, make_example
from src.generators.km import AveragedReflection, PlaneRotation, ProjectionComposition, km_iteration
from src.generators.predictor import opial_limit_predictor
from src.hilbert.algebra import distance_matrix, distance_trace
from src.hilbert.tail import tail_limit_estimate
from src.models import SequencePrefix, Tolerance
from src.monotonicity.classify import ClassName
from src.monotonicity.finite_length import finite_length
from src.monotonicity.robbins_siegmund import robbins_siegmund_check, simulate_recursion
from src.monotonicity.sampler import sample_test_points
from src.monotonicity.summability import Status
from src.sets.descriptors import AffineSubspace, Ball, ConvexSet, Halfspace, NonnegativeCone, WholeSpace
from src.sets.geometry import affine_hull
from src.sets.projection import contains, project_many, project_trace, projection_constant
from src.verify.checks import (
    CheckResult,
    classify_case,
    conclusion,
    hypothesis,
    match_points,
    opial_holds,
    status_of,
    tail_spread,
    vec,
)
from src.verify.truth import check_case


class Expectation(str, Enum):
    PASS = "Pass"
    EXPECTED_COUNTEREXAMPLE = "ExpectedCounterexample"


@dataclass(frozen=True)
class Scenario:
    id: str
    result_key: str
    title: str
    run: Callable[[], List[CheckResult]]
    expectation: Expectation = Expectation.PASS


# シナリオ群が引用する結果キーの一覧。登録済みシナリオのキー集合と一致しなければならない。
RESULT_KEYS: Tuple[str, ...] = (
    "opial-basic-properties",
    "weak-cluster-location",
    "opial-lemma",
    "strong-cluster-criterion",
    "affine-hull-enlargement",
    "full-hull-weak-convergence",
    "whole-space-characterization",
    "strong-convergence-equivalence",
    "finite-dimension-convergence",
    "subsequence-center-invariance",
    "weak-limit-center-consistency",
    "projection-weak-limit",
    "projected-strong-clusters",
    "distance-limit-compactness",
    "affine-projection-weak-convergence",
    "projection-onto-subspace-equivalences",
    "projection-drift",
    "fejer-projection-convergence",
    "affine-combination-limit",
    "robbins-siegmund",
    "finite-length",
    "hierarchy-strictness",
    "generator-truth",
    "trivial",
)

_REGISTRY: Dict[str, Scenario] = {}

PROXY = HarnessConfig.PROXY_TOL
ALG = HarnessConfig.ALGEBRAIC_TOL
CENTER = HarnessConfig.CENTER_TOL

# 番号による別名 → シナリオ ID。空白の数と大文字小文字は区別しない。
_SCENARIO_ALIASES: Dict[str, str] = {
    "Fact 1.4": "robbins-siegmund",
    "Thm 2.2": "weak-cluster-orthogonality",
    "Thm 2.12": "whole-space-weak-characterization",
    "Thm 2.13": "strong-convergence-equivalence",
    "Cor 2.14": "finite-dim-opial-iff-convergent",
    "Fact 3.2(iii)": "weak-limit-center-consistency",
    "Fact 3.2(iv)": "fejer-projection-convergence",
    "Thm 3.6": "projection-weak-limit-when-distance-vanishes",
    "Prop 3.8": "projected-strong-clusters-at-center",
    "Prop 3.11": "distance-limit-under-compactness",
    "Thm 3.13": "affine-projection-weak-convergence",
    "Prop 3.14(i)": "subspace-projection-opial-iff-distance-converges",
    "Prop 3.14(ii)": "subspace-projection-opial-iff-norm-converges",
}


def _alias_key(name: str) -> str:
    return " ".join(name.split()).lower()


_ALIAS_INDEX: Dict[str, str] = {_alias_key(k): v for k, v in _SCENARIO_ALIASES.items()}


def scenario(id: str, result_key: str, title: str, expectation: Expectation = Expectation.PASS):
    def register(fn: Callable[[], List[CheckResult]]) -> Callable[[], List[CheckResult]]:
        if id in _REGISTRY:
            raise ValueError(f"duplicate scenario id {id!r}")
        _REGISTRY[id] = Scenario(id, result_key, title, fn, expectation)
        return fn
    return register


def scenario_ids() -> List[str]:
    return sorted(_REGISTRY)


def scenario_aliases() -> Dict[str, str]:
    return dict(_SCENARIO_ALIASES)


def get_scenario(id: str) -> Scenario:
    """ID または番号による別名（"Thm 3.13" など）からシナリオを引く。"""
    if id in _REGISTRY:
        return _REGISTRY[id]
    target = _ALIAS_INDEX.get(_alias_key(id))
    if target is not None:
        return _REGISTRY[target]
    raise UnknownNameError("scenario", id, list(_REGISTRY) + list(_SCENARIO_ALIASES))


def all_scenarios() -> List[Scenario]:
    return [_REGISTRY[k] for k in scenario_ids()]


def check_coverage() -> None:
    """登録済みシナリオが結果キーの一覧をちょうど覆っているか確かめる。"""
    used = {s.result_key for s in _REGISTRY.values()}
    missing = set(RESULT_KEYS) - used
    unknown = used - set(RESULT_KEYS)
    if missing or unknown:
        raise RuntimeError(f"scenario coverage mismatch: missing={sorted(missing)} unknown={sorted(unknown)}")
    dangling = sorted(k for k, v in _SCENARIO_ALIASES.items() if v not in _REGISTRY)
    if dangling:
        raise RuntimeError(f"scenario aliases point to unknown ids: {dangling}")


# --- ケース（シナリオ間で共有する） ---
@lru_cache(maxsize=None)
def _example(name: str, horizon: Optional[int] = None) -> GeneratedCase:
    return make_example(name, horizon)


@lru_cache(maxsize=None)
def _km_ball() -> GeneratedCase:
    # T = P_B（α = 1/2）を λ = 1/2 で緩和: 球の外から半径方向に等比的に近づく
    return km_iteration(AveragedReflection(Ball(np.zeros(2), 1.0), 0.5), [3.0, 1.0], relaxation=0.5)


@lru_cache(maxsize=None)
def _km_halfspaces() -> GeneratedCase:
    sets = (Halfspace(np.array([1.0, 1.0]), 0.0), Halfspace(np.array([1.0, -1.0]), 0.0))
    return km_iteration(ProjectionComposition(sets), [2.0, 1.0], relaxation=0.5)


@lru_cache(maxsize=None)
def _km_rotation_plane() -> GeneratedCase:
    return km_iteration(PlaneRotation(math.pi / 2, (0.5, -0.5)), [2.0, 1.0], relaxation=0.5)


@lru_cache(maxsize=None)
def _km_rotation_space() -> GeneratedCase:
    # 等長写像をそのまま回す（λ = 1）: Fix T は回転軸、距離は一定
    return km_iteration(PlaneRotation(2.0 * math.pi / 7.0, (0.0, 0.0, 0.0)), [1.0, 0.0, 0.5], relaxation=1.0)


_KM_CASES: Dict[str, Callable[[], GeneratedCase]] = {
    "km-averaged-reflection": _km_ball,
    "km-projection-composition": _km_halfspaces,
    "km-plane-rotation": _km_rotation_plane,
    "km-plane-rotation-isometric": _km_rotation_space,
}


# --- 共通ヘルパ ---
def _limit(case: GeneratedCase, values: np.ndarray, tol: Optional[Tolerance] = None):
    return tail_limit_estimate(values, case.seq.tail_start, tol or case.limit_tolerance())


def _whole_space_points(case: GeneratedCase, decay: Optional[float] = None) -> np.ndarray:
    return sample_test_points(WholeSpace(case.seq.dim), GeneratorConfig.CASE_TEST_POINTS, decay=decay)


def _opial_check(case: GeneratedCase, label: str, set_name: Optional[str] = None, points=None,
                 seq: Optional[SequencePrefix] = None, hyp: bool = True) -> CheckResult:
    rep = classify_case(case, set_name, points=points, seq=seq)
    make = hypothesis if hyp else conclusion
    return make(label, opial_holds(rep), case.limit_tolerance().abs, opial=status_of(rep, ClassName.OPIAL))


def _set_points(case: GeneratedCase, set_: ConvexSet, decay: Optional[float]) -> np.ndarray:
    return sample_test_points(set_, GeneratorConfig.CASE_TEST_POINTS, dim=case.seq.dim, decay=decay)


# --- 基本性質 ---
def _basic_bounds(case: GeneratedCase, set_name: str) -> List[CheckResult]:
    pts = case.test_points[set_name]
    dist = distance_matrix(case.seq, pts)
    n0 = case.seq.tail_start
    norms = np.linalg.norm(case.seq.tail, axis=1)
    bound = float(np.min(dist[:, n0:].max(axis=1) + np.linalg.norm(pts, axis=1)))
    _, d_c = project_trace(case.seq, case.sets[set_name])
    limits = [_limit(case, row) for row in dist]
    inf_limit = min(float(e.limit) for e in limits if e.converges)
    limsup = float(d_c[n0:].max())
    tol = case.limit_tolerance().bound(inf_limit)
    return [
        _opial_check(case, f"{case.name}: Opial wrt {set_name}", set_name),
        conclusion(f"{case.name}: tail bounded by limit plus norm", float(norms.max()) <= bound + ALG, ALG,
                   tail_max_norm=float(norms.max()), bound=bound),
        conclusion(f"{case.name}: limsup d_{set_name} <= inf of distance limits", limsup <= inf_limit + tol, tol,
                   limsup_distance=limsup, inf_limit=inf_limit),
    ]


@scenario("basic-bounds", "opial-basic-properties", "Opial sequences are bounded and limsup d_C is below every distance limit")
def _s_basic_bounds() -> List[CheckResult]:
    return _basic_bounds(_example("sign-flip-plane"), "C") + _basic_bounds(_example("anchored-drift"), "Y")


@scenario("weak-cluster-orthogonality", "weak-cluster-location", "Differences of weak cluster points are orthogonal to C − C")
def _s_weak_cluster_orthogonality() -> List[CheckResult]:
    out: List[CheckResult] = []
    for name, set_name in (("sign-flip-plane", "C"), ("anchored-drift", "Y")):
        case = _example(name)
        weak = weak_clusters_proxy(case.seq)
        rep = orthogonality_check(weak, case.sets[set_name], case.test_points[set_name], tol=ALG)
        out += [
            _opial_check(case, f"{name}: Opial wrt {set_name}", set_name),
            hypothesis(f"{name}: at least two weak cluster points", len(weak) >= 2, PROXY, "proxy",
                       weak_proxy=[vec(w) for w in weak]),
            conclusion(f"{name}: <w - w', c - c'> = 0", rep.passed, ALG,
                       **{k: v for k, v in rep.as_dict().items() if k != "tol"}),
        ]
    return out


# --- Opial の補題 ---
@scenario("opial-lemma", "opial-lemma", "Opial wrt C with all weak cluster points in C gives weak convergence into C")
def _s_opial_lemma() -> List[CheckResult]:
    case = _km_halfspaces()
    fix = case.sets["FixT"]
    weak = weak_clusters_proxy(case.seq)
    inside = [contains(fix, w, PROXY) for w in weak]
    return [
        _opial_check(case, "Opial wrt Fix T", "FixT"),
        hypothesis("weak cluster points lie in Fix T", bool(weak) and all(inside), PROXY, "proxy",
                   weak_proxy=[vec(w) for w in weak]),
        conclusion("single weak limit in Fix T", len(weak) == 1 and all(inside), PROXY, "proxy"),
    ]


@scenario("opial-lemma-cluster-outside", "opial-lemma",
          "Without weak cluster points in C an Opial sequence need not converge weakly",
          Expectation.EXPECTED_COUNTEREXAMPLE)
def _s_opial_lemma_cluster_outside() -> List[CheckResult]:
    case = _example("sign-flip-plane")
    c = case.sets["C"]
    weak = weak_clusters_proxy(case.seq)
    return [
        _opial_check(case, "Opial wrt C", "C"),
        hypothesis("a weak cluster point lies outside C", any(not contains(c, w) for w in weak), PROXY, "proxy",
                   weak_proxy=[vec(w) for w in weak]),
        conclusion("weakly convergent", len(weak) == 1, PROXY, "proxy", weak_count=len(weak)),
    ]


# --- アフィン包 ---
@scenario("affine-hull-enlargement", "affine-hull-enlargement", "Opial wrt C extends to the closed affine hull of C")
def _s_affine_hull() -> List[CheckResult]:
    out: List[CheckResult] = []
    for name, decay in (("sign-flip-plane", None), ("anchored-drift", GeneratorConfig.DRIFT_SAMPLE_DECAY)):
        case = _example(name)
        hull = affine_hull(case.sets["C"])
        out += [
            _opial_check(case, f"{name}: Opial wrt C", "C"),
            conclusion(f"{name}: Opial wrt aff C",
                       opial_holds(classify_case(case, points=_set_points(case, hull, decay))),
                       case.limit_tolerance().abs, hull=hull.variant),
        ]
    return out


@scenario("affine-hull-sharpness", "affine-hull-enlargement",
          "Opial wrt C does not extend to points outside aff C",
          Expectation.EXPECTED_COUNTEREXAMPLE)
def _s_affine_hull_sharpness() -> List[CheckResult]:
    out: List[CheckResult] = []
    for name, axis in (("sign-flip-plane", 0), ("anchored-drift", 0)):
        case = _example(name)
        hull = affine_hull(case.sets["C"])
        probe = np.zeros(case.seq.dim)
        probe[axis] = 0.5 if case.seq.dim == 2 else 1.0
        out += [
            _opial_check(case, f"{name}: Opial wrt C", "C"),
            hypothesis(f"{name}: probe lies outside aff C", not contains(hull, probe), None, probe=vec(probe)),
            _opial_check(case, f"{name}: Opial at the probe", points=probe.reshape(1, -1), hyp=False),
        ]
    return out


# --- 強収束 ---
@scenario("strong-cluster-criterion", "strong-cluster-criterion",
          "An Opial sequence converges strongly into C iff it has a strong cluster point in C")
def _s_strong_cluster_criterion() -> List[CheckResult]:
    case = _example("sqrt-null-interleaved")
    zero = case.sets["zero"]
    clusters = [c.center for c in strong_clusters(case.seq) if contains(zero, c.center)]
    out = [
        _opial_check(case, "sqrt-null-interleaved: Opial wrt {0}", "zero"),
        hypothesis("strong cluster point in {0}", len(clusters) == 1, NumericsConfig.MEMBERSHIP_TOL,
                   clusters=[vec(c) for c in clusters]),
    ]
    if clusters:
        trace = distance_trace(case.seq, clusters[0])
        est = _limit(case, trace)
        tail = trace[case.seq.tail_start:]
        quarter = max(tail.shape[0] // 4, 1)
        out += [
            conclusion("distance to the cluster point has limit 0", est.converges and est.liminf <= ALG, ALG,
                       limit=est.as_dict()),
            conclusion("tail envelope decreases", float(tail[-quarter:].max()) < float(tail[:quarter].max()), None,
                       "proxy", first_quarter_max=float(tail[:quarter].max()), last_quarter_max=float(tail[-quarter:].max())),
        ]

    flip = _example("sign-flip-plane")
    c = flip.sets["C"]
    in_c = [s.center for s in strong_clusters(flip.seq) if contains(c, s.center)]
    out.append(conclusion(
        "sign-flip-plane: no strong cluster in C and no strong limit",
        not in_c and tail_spread(flip.seq) > PROXY, PROXY, "proxy", tail_spread=tail_spread(flip.seq),
    ))
    return out


def _three_way(case: GeneratedCase, points: np.ndarray, label: str) -> List[CheckResult]:
    """強収束・(Opial wrt X + ノルム収束)・(弱収束 + ノルム収束) の一致を調べる。"""
    weak = weak_clusters_proxy(case.seq)
    if len(weak) != 1:
        return [hypothesis(f"{label}: weak limit exists", False, PROXY, "proxy", weak_count=len(weak))]
    w = weak[0]
    norm_est = _limit(case, np.linalg.norm(case.seq.points, axis=1))
    norm_ok = norm_est.converges and abs(float(norm_est.limit) - float(np.linalg.norm(w))) <= PROXY
    strong = float(np.max(np.linalg.norm(case.seq.tail - w, axis=1))) <= PROXY
    opial = opial_holds(classify_case(case, points=points))
    # 弱極限は存在するので、3 つ目の条件はノルム極限の一致だけになる
    conditions = (strong, opial and norm_ok, norm_ok)
    return [
        hypothesis(f"{label}: weak limit exists", True, PROXY, "proxy", weak_limit=vec(w)),
        conclusion(
            f"{label}: strong <=> Opial wrt X with norm limit <=> weak with norm limit",
            len(set(conditions)) == 1, PROXY, "proxy",
            strong=strong, opial_wrt_x=opial, norm_limit_matches=norm_ok,
        ),
    ]


@scenario("strong-convergence-equivalence", "strong-convergence-equivalence",
          "Strong convergence, Opial wrt X with matching norms, and weak convergence with matching norms agree")
def _s_strong_convergence_equivalence() -> List[CheckResult]:
    rot = _km_rotation_plane()
    unit = _example("unit-vectors")
    return (
        _three_way(rot, _whole_space_points(rot), "km-plane-rotation")
        + _three_way(unit, unit.test_points["X"], "unit-vectors")
    )


# --- X 全体に関する Opial 性 ---
def _whole_space_equivalence(case: GeneratedCase) -> List[CheckResult]:
    weak = weak_clusters_proxy(case.seq)
    norms = _limit(case, np.linalg.norm(case.seq.points, axis=1))
    lhs = len(weak) == 1 and norms.converges
    rhs = opial_holds(classify_case(case, "X"))
    return [
        conclusion(f"{case.name}: weakly convergent with convergent norms <=> Opial wrt X", lhs == rhs, PROXY, "proxy",
                   weak_count=len(weak), norms=norms.kind.value, opial_wrt_x=rhs),
    ]


@scenario("whole-space-weak-characterization", "whole-space-characterization",
          "Opial wrt X iff weakly convergent with convergent norms (both sides true)")
def _s_whole_space_true() -> List[CheckResult]:
    case = _example("unit-vectors")
    return [_opial_check(case, "unit-vectors: Opial wrt X", "X")] + _whole_space_equivalence(case)


@scenario("whole-space-norm-oscillation", "whole-space-characterization",
          "Opial wrt X iff weakly convergent with convergent norms (both sides false)")
def _s_whole_space_false() -> List[CheckResult]:
    case = _example("unit-vectors-interleaved")
    weak = weak_clusters_proxy(case.seq)
    return [
        hypothesis("weak limit exists", len(weak) == 1, PROXY, "proxy", weak_proxy=[vec(w) for w in weak]),
    ] + _whole_space_equivalence(case)


@scenario("full-hull-weak-convergence", "full-hull-weak-convergence",
          "Opial wrt a set whose affine hull is X forces weak convergence")
def _s_full_hull() -> List[CheckResult]:
    case = _example("unit-vectors")
    ball = Ball(np.zeros(case.seq.dim), 1.0)
    pts = _set_points(case, ball, GeneratorConfig.DRIFT_SAMPLE_DECAY)
    hull = affine_hull(ball)
    cone = NonnegativeCone(case.seq.dim)
    cone_hull = affine_hull(cone)
    weak = weak_clusters_proxy(case.seq)
    return [
        _opial_check(case, "unit-vectors: Opial wrt unit ball", points=pts),
        hypothesis("affine hull of the ball is X", isinstance(hull, WholeSpace), None, variant=hull.variant),
        _opial_check(case, "unit-vectors: Opial wrt nonnegative cone",
                     points=_set_points(case, cone, GeneratorConfig.DRIFT_SAMPLE_DECAY)),
        # 切り詰めた錐は内部が空でないので、確かめるのはアフィン包が X であることだけ
        hypothesis("affine hull of the nonnegative cone is X", isinstance(cone_hull, WholeSpace), None,
                   variant=cone_hull.variant, note="truncated cone has nonempty interior; only the hull is checked"),
        conclusion("single weak limit", len(weak) == 1, PROXY, "proxy", weak_proxy=[vec(w) for w in weak]),
    ]


@scenario("finite-dim-opial-iff-convergent", "finite-dimension-convergence",
          "In finite dimension Opial wrt X iff convergent")
def _s_finite_dim() -> List[CheckResult]:
    out: List[CheckResult] = []
    for case in (_example("constant"), _example("sign-flip-plane"), _km_rotation_plane()):
        opial = opial_holds(classify_case(case, points=_whole_space_points(case)))
        convergent = tail_spread(case.seq) <= PROXY
        out.append(conclusion(f"{case.name}: Opial wrt X <=> convergent", opial == convergent, PROXY, "proxy",
                              opial_wrt_x=opial, convergent=convergent))
    return out


# --- 部分列と漸近中心 ---
@scenario("subsequence-center-invariance", "subsequence-center-invariance",
          "Subsequences of an Opial sequence share its asymptotic center")
def _s_subsequence_invariance() -> List[CheckResult]:
    case = _example("sign-flip-plane")
    rep = subsequence_center_invariance(case.seq, case.sets["affC"])
    return [
        _opial_check(case, "Opial wrt aff C", "affC"),
        conclusion("centers coincide", rep.max_center_spread <= CENTER, CENTER, "center", **rep.as_dict()),
        conclusion("asymptotic radii coincide", rep.max_objective_spread <= CENTER, CENTER, "center"),
    ]


@scenario("subsequence-center-invariance-without-opial", "subsequence-center-invariance",
          "Without the Opial property subsequences may have different asymptotic centers",
          Expectation.EXPECTED_COUNTEREXAMPLE)
def _s_subsequence_invariance_counter() -> List[CheckResult]:
    case = _example("sign-flip-plane")
    rep = subsequence_center_invariance(case.seq, case.sets["X"])
    opial = classify_case(case, "X")
    return [
        hypothesis("bounded but not Opial wrt X", not opial_holds(opial), None,
                   opial=status_of(opial, ClassName.OPIAL)),
        conclusion("centers coincide", rep.max_center_spread <= CENTER, CENTER, "center", **rep.as_dict()),
    ]


@scenario("weak-limit-center-consistency", "weak-limit-center-consistency",
          "A sequence in C that is Opial wrt C converges weakly to its asymptotic center")
def _s_weak_limit_center() -> List[CheckResult]:
    case = _km_ball()
    c = case.sets["FixT"]
    projected, _ = project_trace(case.seq, c)
    center = asymptotic_center(projected, c).center
    weak = weak_clusters_proxy(projected)
    inside = bool(np.all(project_many(c, projected.points).distances <= NumericsConfig.MEMBERSHIP_TOL))
    return [
        hypothesis("terms lie in C", inside, NumericsConfig.MEMBERSHIP_TOL),
        _opial_check(case, "Opial wrt C", "FixT", seq=projected),
        conclusion("weak limit equals A_C", match_points(weak, [center], PROXY), PROXY, "proxy",
                   weak_proxy=[vec(w) for w in weak], center=vec(center)),
    ]


# --- 射影列 ---
@scenario("projection-weak-limit-when-distance-vanishes", "projection-weak-limit",
          "If d_C(x_n) → 0 then P_C x_n converges weakly to A_C and both centers agree")
def _s_projection_weak_limit() -> List[CheckResult]:
    case = _km_ball()
    c = case.sets["FixT"]
    projected, d_c = project_trace(case.seq, c)
    a_x = asymptotic_center(case.seq, c).center
    a_p = asymptotic_center(projected, c).center
    weak = weak_clusters_proxy(projected)
    tail_d = float(d_c[case.seq.tail_start:].max())
    return [
        _opial_check(case, "Opial wrt C", "FixT"),
        hypothesis("d_C(x_n) -> 0", tail_d <= PROXY, PROXY, "proxy", tail_max_distance=tail_d),
        _opial_check(case, "projected sequence Opial wrt C", "FixT", seq=projected, hyp=False),
        conclusion("A_C(x) = A_C(P_C x)", float(np.linalg.norm(a_x - a_p)) <= CENTER, CENTER, "center",
                   center_x=vec(a_x), center_projected=vec(a_p)),
        conclusion("P_C x_n converges weakly to A_C", match_points(weak, [a_x], PROXY), PROXY, "proxy",
                   weak_proxy=[vec(w) for w in weak]),
    ]


@scenario("projection-weak-limit-not-strong", "projection-weak-limit",
          "Even with d_C(x_n) → 0 the projections need not converge strongly",
          Expectation.EXPECTED_COUNTEREXAMPLE)
def _s_projection_not_strong() -> List[CheckResult]:
    case = _example("unit-vectors")
    projected, d_c = project_trace(case.seq, case.sets["X"])
    return [
        _opial_check(case, "Opial wrt X", "X"),
        hypothesis("d_X(x_n) -> 0", float(d_c.max()) <= ALG, ALG),
        conclusion("P_X x_n converges strongly", tail_spread(projected) <= PROXY, PROXY, "proxy",
                   tail_spread=tail_spread(projected)),
    ]


@scenario("projected-strong-clusters-at-center", "projected-strong-clusters",
          "Every strong cluster point of P_C x_n is the asymptotic center")
def _s_projected_strong_clusters() -> List[CheckResult]:
    out: List[CheckResult] = []
    for name, set_name in (("sign-flip-plane", "affC"), ("anchored-drift", "Y")):
        case = _example(name)
        projected, _ = project_trace(case.seq, case.sets[set_name])
        center = asymptotic_center(case.seq, case.sets[set_name]).center
        clusters = [s.center for s in strong_clusters(projected)]
        out += [
            _opial_check(case, f"{name}: Opial wrt {set_name}", set_name),
            conclusion(
                f"{name}: strong clusters of P_{set_name} x_n equal A_{set_name}",
                bool(clusters) and all(np.linalg.norm(p - center) <= CENTER for p in clusters), CENTER, "center",
                clusters=[vec(p) for p in clusters], center=vec(center),
            ),
        ]
    return out


def _distance_limit(case: GeneratedCase, set_name: str) -> List[CheckResult]:
    set_ = case.sets[set_name]
    _, d_c = project_trace(case.seq, set_)
    center = asymptotic_center(case.seq, set_).center
    proxy_tol = Tolerance(abs=PROXY)
    d_est = _limit(case, d_c, proxy_tol)
    a_est = _limit(case, distance_trace(case.seq, center), proxy_tol)
    limits = [_limit(case, row) for row in distance_matrix(case.seq, case.test_points[set_name])]
    best = min(float(e.limit) for e in limits if e.converges)
    ok = d_est.converges and a_est.converges and abs(float(d_est.limit) - float(a_est.limit)) <= PROXY
    return [
        _opial_check(case, f"{case.name}: Opial wrt {set_name}", set_name),
        conclusion(f"{case.name}: lim d_{set_name} = lim ||x_n - A||", ok, PROXY, "proxy",
                   distance_limit=d_est.as_dict(), center_limit=a_est.as_dict()),
        conclusion(f"{case.name}: A minimizes the distance limits",
                   a_est.converges and float(a_est.limit) <= best + PROXY, PROXY, "proxy",
                   center_limit=a_est.limit, best_test_limit=best),
    ]


@scenario("distance-limit-under-compactness", "distance-limit-compactness",
          "In finite dimension d_C(x_n) converges to lim ||x_n − A_C|| = min over C of the distance limits")
def _s_distance_limit() -> List[CheckResult]:
    return (
        _distance_limit(_example("sign-flip-plane"), "C")
        + _distance_limit(_example("vanishing-offset-sign-flip", 256), "Y")
    )


@scenario("affine-projection-weak-convergence", "affine-projection-weak-convergence",
          "For an affine Opial set Y the projections P_Y x_n converge weakly to A_Y")
def _s_affine_projection() -> List[CheckResult]:
    out: List[CheckResult] = []
    for name, set_name in (("anchored-drift", "Y"), ("sign-flip-plane", "affC")):
        case = _example(name)
        y = case.sets[set_name]
        projected, _ = project_trace(case.seq, y)
        center = asymptotic_center(case.seq, y).center
        weak = weak_clusters_proxy(projected)
        out += [
            _opial_check(case, f"{name}: Opial wrt {set_name}", set_name),
            hypothesis(f"{name}: {set_name} is affine", isinstance(y, AffineSubspace), None, variant=y.variant),
            conclusion(f"{name}: P_{set_name} x_n converges weakly to A_{set_name}", match_points(weak, [center], PROXY),
                       PROXY, "proxy", weak_proxy=[vec(w) for w in weak], center=vec(center)),
        ]
    return out


@scenario("affine-projection-sharpness", "affine-projection-weak-convergence",
          "For a non-affine Opial set the projections need not converge weakly",
          Expectation.EXPECTED_COUNTEREXAMPLE)
def _s_affine_projection_sharpness() -> List[CheckResult]:
    case = _example("anchored-drift")
    c = case.sets["C"]
    projected, _ = project_trace(case.seq, c)
    weak = weak_clusters_proxy(projected)
    return [
        _opial_check(case, "Opial wrt C = B ∩ Y", "C"),
        hypothesis("C is not affine", not isinstance(c, AffineSubspace), None, variant=c.variant),
        conclusion("P_C x_n converges weakly", len(weak) == 1, PROXY, "proxy", weak_proxy=[vec(w) for w in weak]),
    ]


def _subspace_distance(case: GeneratedCase, set_name: str) -> List[CheckResult]:
    y = case.sets[set_name]
    projected, d_y = project_trace(case.seq, y)
    lhs = opial_holds(classify_case(case, set_name, seq=projected))
    rhs = _limit(case, d_y).converges
    out = [
        _opial_check(case, f"{case.name}: Opial wrt {set_name}", set_name),
        hypothesis(f"{case.name}: {set_name} is a linear subspace", isinstance(y, AffineSubspace) and y.is_linear, None),
        conclusion(f"{case.name}: P_{set_name} x_n Opial wrt {set_name} <=> d_{set_name}(x_n) converges",
                   lhs == rhs, case.limit_tolerance().abs, projected_opial=lhs, distance_converges=rhs),
    ]
    if lhs and rhs:
        weak = weak_clusters_proxy(projected)
        out.append(conclusion(f"{case.name}: P_{set_name} x_n converges weakly", len(weak) == 1, PROXY, "proxy",
                              weak_proxy=[vec(w) for w in weak]))
    return out


@scenario("subspace-projection-opial-iff-distance-converges", "projection-onto-subspace-equivalences",
          "For x_n Opial wrt a linear Y: P_Y x_n is Opial wrt Y iff d_Y(x_n) converges")
def _s_subspace_distance() -> List[CheckResult]:
    return _subspace_distance(_example("anchored-drift"), "Y") + _subspace_distance(_example("sign-flip-plane"), "affC")


@scenario("subspace-projection-opial-iff-norm-converges", "projection-onto-subspace-equivalences",
          "For weakly convergent x_n: P_Y x_n is Opial wrt Y iff ||P_Y x_n|| converges")
def _s_subspace_norm() -> List[CheckResult]:
    case = _example("unit-vectors")
    d = case.seq.dim
    weak = weak_clusters_proxy(case.seq)
    out = [hypothesis("unit-vectors: weakly convergent", len(weak) == 1, PROXY, "proxy")]
    for label, y in (("X", WholeSpace(d)), ("even coordinates", AffineSubspace.coordinate(d, range(0, d, 2)))):
        projected, _ = project_trace(case.seq, y)
        pts = _set_points(case, y, GeneratorConfig.DRIFT_SAMPLE_DECAY)
        lhs = opial_holds(classify_case(case, points=pts, seq=projected))
        rhs = _limit(case, np.linalg.norm(projected.points, axis=1)).converges
        out.append(conclusion(f"{label}: P_Y x_n Opial wrt Y <=> ||P_Y x_n|| converges", lhs == rhs,
                              case.limit_tolerance().abs, projected_opial=lhs, norms_converge=rhs))
    return out


@scenario("projection-drift-without-fejer", "projection-drift",
          "Opial (not Fejér) wrt a linear subspace does not keep P_Y x_n constant",
          Expectation.EXPECTED_COUNTEREXAMPLE)
def _s_projection_drift() -> List[CheckResult]:
    case = _example("vanishing-offset-sign-flip")
    y = case.sets["Y"]
    info = projection_constant(case.seq, y)
    return [
        _opial_check(case, "Opial wrt Y", "Y"),
        hypothesis("Y is a linear subspace", isinstance(y, AffineSubspace) and y.is_linear, None),
        conclusion("P_Y x_n = P_Y x_0 for all n", info["constant"], NumericsConfig.MEMBERSHIP_TOL, **info),
    ]


@scenario("fejer-projection-constant", "projection-drift",
          "Fejér monotone wrt a linear subspace keeps P_Y x_n constant")
def _s_fejer_projection_constant() -> List[CheckResult]:
    case = _km_rotation_space()
    fix = case.sets["FixT"]
    rep = classify_case(case, "FixT")
    info = projection_constant(case.seq, fix)
    return [
        hypothesis("Fejér wrt Fix T", rep.status(ClassName.FEJER) is Status.HOLDS, NumericsConfig.DEFAULT_ABS_TOL),
        hypothesis("Fix T is a linear subspace", isinstance(fix, AffineSubspace) and fix.is_linear, None),
        conclusion("P_Y x_n = P_Y x_0 for all n", info["constant"], NumericsConfig.MEMBERSHIP_TOL, **info),
    ]


@scenario("fejer-projection-convergence", "fejer-projection-convergence",
          "Fejér monotone sequences have P_C x_n → A_C strongly")
def _s_fejer_projection_convergence() -> List[CheckResult]:
    out: List[CheckResult] = []
    for case in (_km_rotation_space(), _km_ball()):
        fix = case.sets["FixT"]
        rep = classify_case(case, "FixT")
        projected, _ = project_trace(case.seq, fix)
        center = asymptotic_center(case.seq, fix).center
        gap = float(np.max(np.linalg.norm(projected.tail - center, axis=1)))
        out += [
            hypothesis(f"{case.name}: Fejér wrt Fix T", rep.status(ClassName.FEJER) is Status.HOLDS,
                       NumericsConfig.DEFAULT_ABS_TOL),
            conclusion(f"{case.name}: P_C x_n -> A_C", gap <= CENTER, CENTER, "center",
                       tail_max_gap=gap, center=vec(center)),
        ]
    return out


# --- 極限の公式 ---
def _random_combinations(points: np.ndarray, count: int, seed: int) -> List[List[Tuple[float, np.ndarray]]]:
    rng = np.random.default_rng(seed)
    out: List[List[Tuple[float, np.ndarray]]] = []
    while len(out) < count:
        idx = rng.choice(points.shape[0], size=3, replace=False)
        head = rng.uniform(-1.5, 1.5, size=2)
        last = 1.0 - float(head.sum())
        if abs(last) > 4.0:
            continue
        lams = [float(head[0]), float(head[1]), last]
        out.append([(lam, points[i]) for lam, i in zip(lams, idx)])
    return out


@scenario("affine-combination-limit-formula", "affine-combination-limit",
          "Distance limits at affine combinations follow the parallelogram-type identity")
def _s_affine_combination() -> List[CheckResult]:
    out: List[CheckResult] = []
    flip = _example("sign-flip-plane")
    rep = opial_limit_predictor(flip, [(0.5, [0.0, 1.0]), (0.5, [0.0, -1.0])])
    out.append(conclusion("sign-flip-plane: midpoint of (0, ±1) predicts 1", abs(rep.predicted - 1.0) <= ALG
                          and rep.error is not None and rep.error <= ALG, ALG, **rep.as_dict()))
    for name, set_name in (("sign-flip-plane", "affC"), ("anchored-drift", "Y")):
        case = _example(name)
        combos = _random_combinations(case.test_points[set_name], 20, ClassifierConfig.SAMPLE_SEED)
        reports = [opial_limit_predictor(case, combo) for combo in combos]
        errors = [r.error for r in reports]
        worst = max(float("inf") if e is None else e for e in errors)
        out.append(conclusion(
            f"{name}: 20 affine combinations in {set_name} match measured limits",
            worst <= HarnessConfig.PREDICTOR_TOL and not any(r.clamped for r in reports),
            HarnessConfig.PREDICTOR_TOL, "predictor", max_error=worst, combinations=len(reports),
        ))
    return out


# --- 単調性 ---
@scenario("robbins-siegmund", "robbins-siegmund",
          "The deterministic Robbins–Siegmund recursion forces convergence and a bounded Σβ")
def _s_robbins_siegmund() -> List[CheckResult]:
    n = np.arange(64, dtype=np.float64)
    delta = eps = 2.0 ** (-n)
    beta = 2.0 ** (-n - 1.0)
    alpha = simulate_recursion(1.0, beta, delta, eps)
    rep = robbins_siegmund_check(alpha, beta, delta, eps)
    reversed_alpha = 1.0 / np.sqrt(n[::-1] + 1.0)
    zeros = np.zeros_like(n)
    bad = robbins_siegmund_check(reversed_alpha, zeros, zeros, zeros)
    return [
        hypothesis("recursion holds pointwise", rep.inequality_holds_all_n, ALG),
        hypothesis("Σδ and Σε summable at horizon", rep.delta_summable is Status.HOLDS and rep.eps_summable is Status.HOLDS,
                   None, "heuristic"),
        conclusion("alpha converges", rep.alpha_verdict.converges, ALG, alpha=rep.alpha_verdict.as_dict()),
        conclusion("Σβ within the derived bound", rep.beta_sum_bounded, ALG, beta_sum=rep.beta_sum, bound=rep.beta_bound),
        conclusion("increasing alpha is rejected with a witness", not bad.inequality_holds_all_n and bad.witness is not None,
                   ALG, witness=bad.witness),
    ]


@scenario("finite-length-contrast", "finite-length",
          "Fejér wrt a set with interior has finite length; the unit vectors do not")
def _s_finite_length() -> List[CheckResult]:
    ball = _km_ball()
    fejer = classify_case(ball, "FixT")
    good = finite_length(ball.seq)
    unit = _example("unit-vectors")
    bad = finite_length(unit.seq)
    expected_sum = (unit.seq.length - 1) * math.sqrt(2.0)
    return [
        hypothesis("km-averaged-reflection: Fejér wrt a ball", fejer.status(ClassName.FEJER) is Status.HOLDS,
                   NumericsConfig.DEFAULT_ABS_TOL),
        conclusion("km-averaged-reflection: finite length", good.summability is Status.HOLDS, None, "heuristic",
                   partial_sum=good.partial_sum),
        conclusion("unit-vectors: increments stay at √2", abs(bad.partial_sum - expected_sum) <= ALG * expected_sum
                   and bad.summability is Status.FAILS, ALG, partial_sum=bad.partial_sum, expected=expected_sum),
    ]


@scenario("hierarchy-strictness", "hierarchy-strictness",
          "An Opial sequence that is neither Fejér* nor quasi-Fejér")
def _s_hierarchy() -> List[CheckResult]:
    case = _example("sqrt-null-interleaved")
    rep = classify_case(case, "zero")
    fejer = rep.verdict(ClassName.FEJER)
    qf = rep.verdict(ClassName.QUASI_FEJER_I)
    witness_ok = False
    if fejer.witness is not None:
        n, c = fejer.witness.index, np.asarray(fejer.witness.point)
        d = np.linalg.norm(case.seq.points[[n, n + 1]] - c, axis=1)
        witness_ok = bool(d[1] - d[0] > rep.tol.bound(d[0]))
    return [
        conclusion("Opial holds", rep.status(ClassName.OPIAL) is Status.HOLDS, case.limit_tolerance().abs),
        conclusion("Fejér fails with a reproducible witness", fejer.status is Status.FAILS and witness_ok,
                   NumericsConfig.DEFAULT_ABS_TOL, witness=fejer.witness.as_dict() if fejer.witness else None),
        conclusion("Fejér* fails", rep.status(ClassName.FEJER_STAR) is Status.FAILS, NumericsConfig.DEFAULT_ABS_TOL),
        conclusion("quasi-Fejér is not certified and carries its excess trace",
                   qf.status is not Status.HOLDS and "excess" in qf.details, None, "heuristic",
                   quasi_fejer_i=qf.status.value),
    ]


# --- 生成器の正解タグ ---
def _truth_scenario(factory: Callable[[], GeneratedCase]) -> Callable[[], List[CheckResult]]:
    return lambda: check_case(factory())


for _name in example_names():
    if _name == "constant":
        continue
    scenario(f"truth-{_name}", "generator-truth", f"Truth tags of {_name}")(
        _truth_scenario(lambda n=_name: _example(n))
    )
for _name, _factory in _KM_CASES.items():
    scenario(f"truth-{_name}", "generator-truth", f"Truth tags of {_name}")(_truth_scenario(_factory))


@scenario("trivial-constant", "trivial", "A constant sequence satisfies every class")
def _s_trivial() -> List[CheckResult]:
    case = _example("constant")
    rep = classify_case(case, "X")
    return check_case(case) + [
        conclusion(f"{name.value} holds", rep.status(name) is Status.HOLDS, NumericsConfig.DEFAULT_ABS_TOL)
        for name in ClassName
    ]


check_coverage()
