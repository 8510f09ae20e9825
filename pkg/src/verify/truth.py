"""
src.verify.truth

生成器の正解タグを、ハーネスの操作（分類・射影・クラスタ抽出・有限長診断）で確かめる。
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, List

import numpy as np

from src.cluster.extract import strong_clusters, weak_clusters_proxy
from src.config.harness import HarnessConfig
from src.config.numerics import NumericsConfig
from src.generators.cases import GeneratedCase
from src.generators.truth import TagKind, TruthTag
from src.monotonicity.classify import ClassName
from src.monotonicity.finite_length import finite_length
from src.monotonicity.summability import Status
from src.sets.projection import project_many, project_trace, projection_constant
from src.verify.checks import CheckResult, CheckRole, classify_case, match_points, status_of, tail_spread, vec

logger = logging.getLogger(__name__)


def _points(case: GeneratedCase, tag: TruthTag) -> np.ndarray:
    """タグの探索点があればそれ、なければ集合の認証済みテスト点。"""
    if tag.vectors:
        return np.asarray(tag.vectors, dtype=np.float64)
    return case.test_points[tag.set_name]


def _result(tag: TruthTag, passed: bool, tol: float | None = None, tol_kind: str = "algebraic", **values) -> CheckResult:
    return CheckResult(tag.label, CheckRole.CONCLUSION, bool(passed), tol, tol_kind, values)


def _opial(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    rep = classify_case(case, tag.set_name)
    return _result(tag, rep.status(ClassName.OPIAL) is not Status.FAILS, case.limit_tolerance().abs,
                   opial=status_of(rep, ClassName.OPIAL))


def _not_opial(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    rep = classify_case(case, points=_points(case, tag))
    v = rep.verdict(ClassName.OPIAL)
    return _result(tag, v.status is Status.FAILS, case.limit_tolerance().abs,
                   opial=v.status.value, witness=v.witness.as_dict() if v.witness else None)


def _fejer(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    rep = classify_case(case, tag.set_name) if tag.set_name else classify_case(case, points=_points(case, tag))
    return _result(tag, rep.status(ClassName.FEJER) is Status.HOLDS, NumericsConfig.DEFAULT_ABS_TOL,
                   fejer=status_of(rep, ClassName.FEJER))


def _not_fejer(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    if tag.set_name:
        pts = case.test_points[tag.set_name]
        if tag.vectors:
            pts = np.vstack([pts, np.asarray(tag.vectors)])
    else:
        pts = _points(case, tag)
    v = classify_case(case, points=pts).verdict(ClassName.FEJER)
    return _result(tag, v.status is Status.FAILS, NumericsConfig.DEFAULT_ABS_TOL,
                   fejer=v.status.value, witness=v.witness.as_dict() if v.witness else None)


def _not_fejer_star(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    rep = classify_case(case, tag.set_name)
    return _result(tag, rep.status(ClassName.FEJER_STAR) is Status.FAILS, NumericsConfig.DEFAULT_ABS_TOL,
                   fejer_star=status_of(rep, ClassName.FEJER_STAR))


def _not_quasi_fejer(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    rep = classify_case(case, tag.set_name)
    statuses = {n.value: status_of(rep, n) for n in (ClassName.QUASI_FEJER_I, ClassName.QUASI_FEJER_II, ClassName.QUASI_FEJER_III)}
    ok = rep.status(ClassName.QUASI_FEJER_I) is Status.FAILS and all(s != Status.HOLDS.value for s in statuses.values())
    return _result(tag, ok, None, "heuristic", **statuses)


def _strong_limit(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    target = np.asarray(tag.vectors[0])
    dist = np.linalg.norm(case.seq.tail - target, axis=1)
    tol = 1.05 * max(case.noise_floor, HarnessConfig.ALGEBRAIC_TOL)
    return _result(tag, float(dist.max()) <= tol, tol, tail_max_distance=float(dist.max()),
                   tail_min_distance=float(dist.min()), target=vec(target))


def _convergent(case: GeneratedCase, tag: TruthTag, expect: bool) -> CheckResult:
    spread = tail_spread(case.seq)
    ok = spread <= HarnessConfig.PROXY_TOL
    return _result(tag, ok is expect, HarnessConfig.PROXY_TOL, "proxy", tail_spread=spread)


def _weak_limit(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    found = weak_clusters_proxy(case.seq)
    ok = match_points(found, tag.vectors[:1], HarnessConfig.PROXY_TOL)
    return _result(tag, ok, HarnessConfig.PROXY_TOL, "proxy", weak_proxy=[vec(w) for w in found])


def _strong_clusters(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    found = [c.center for c in strong_clusters(case.seq)]
    ok = match_points(found, tag.vectors, HarnessConfig.PROXY_TOL)
    return _result(tag, ok, HarnessConfig.PROXY_TOL, "proxy", strong=[vec(c) for c in found])


def _weak_clusters(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    found = weak_clusters_proxy(case.seq)
    ok = match_points(found, tag.vectors, HarnessConfig.PROXY_TOL)
    return _result(tag, ok, HarnessConfig.PROXY_TOL, "proxy", weak_proxy=[vec(w) for w in found])


def _trace_pattern(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    _, dist = project_trace(case.seq, case.sets[tag.set_name])
    pattern = np.asarray(tag.pattern)
    expected = pattern[np.arange(dist.shape[0]) % pattern.shape[0]]
    err = float(np.max(np.abs(dist - expected)))
    # 閉じた式の射影なので丸め誤差の範囲で一致する
    tol = 1e-12
    return _result(tag, err <= tol, tol, max_error=err, head=[float(d) for d in dist[:4]])


def _no_proper_superset(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    probes = np.asarray(tag.vectors, dtype=np.float64)
    outside = project_many(case.sets[tag.set_name], probes).distances
    # 探索点ごとに Opial が破れることを確かめる
    per_probe = [classify_case(case, points=p.reshape(1, -1)).status(ClassName.OPIAL).value for p in probes]
    ok = bool(np.all(outside > NumericsConfig.MEMBERSHIP_TOL)) and all(s == Status.FAILS.value for s in per_probe)
    return _result(tag, ok, case.limit_tolerance().abs, probe_distances=[float(d) for d in outside],
                   per_probe=per_probe)


def _projected_weak(case: GeneratedCase, tag: TruthTag, expect_limit: bool) -> CheckResult:
    projected, _ = project_trace(case.seq, case.sets[tag.set_name])
    found = weak_clusters_proxy(projected)
    if expect_limit:
        ok = match_points(found, tag.vectors[:1], HarnessConfig.PROXY_TOL)
    else:
        ok = len(found) >= 2
    return _result(tag, ok, HarnessConfig.PROXY_TOL, "proxy", weak_proxy=[vec(w) for w in found])


def _projection_not_constant(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    info = projection_constant(case.seq, case.sets[tag.set_name])
    return _result(tag, not info["constant"], NumericsConfig.MEMBERSHIP_TOL, **info)


def _finite_length(case: GeneratedCase, tag: TruthTag, expect: bool) -> CheckResult:
    rep = finite_length(case.seq)
    want = Status.HOLDS if expect else Status.FAILS
    return _result(tag, rep.summability is want, None, "heuristic",
                   partial_sum=rep.partial_sum, summability=rep.summability.value)


_CHECKERS: Dict[TagKind, Callable[[GeneratedCase, TruthTag], CheckResult]] = {
    TagKind.OPIAL_WRT: _opial,
    TagKind.NOT_OPIAL_WRT: _not_opial,
    TagKind.FEJER_WRT: _fejer,
    TagKind.FEJER_AT: _fejer,
    TagKind.NOT_FEJER_WRT: _not_fejer,
    TagKind.NOT_FEJER_AT: _not_fejer,
    TagKind.NOT_FEJER_STAR_WRT: _not_fejer_star,
    TagKind.NOT_QUASI_FEJER_WRT: _not_quasi_fejer,
    TagKind.STRONG_LIMIT: _strong_limit,
    TagKind.CONVERGENT: lambda c, t: _convergent(c, t, True),
    TagKind.NO_STRONG_LIMIT: lambda c, t: _convergent(c, t, False),
    TagKind.WEAK_LIMIT: _weak_limit,
    TagKind.STRONG_CLUSTERS: _strong_clusters,
    TagKind.WEAK_CLUSTERS: _weak_clusters,
    TagKind.DISTANCE_TRACE_PATTERN: _trace_pattern,
    TagKind.NO_PROPER_SUPERSET: _no_proper_superset,
    TagKind.PROJECTED_WEAK_LIMIT: lambda c, t: _projected_weak(c, t, True),
    TagKind.PROJECTED_NOT_WEAKLY_CONVERGENT: lambda c, t: _projected_weak(c, t, False),
    TagKind.PROJECTION_NOT_CONSTANT: _projection_not_constant,
    TagKind.FINITE_LENGTH: lambda c, t: _finite_length(c, t, True),
    TagKind.NOT_FINITE_LENGTH: lambda c, t: _finite_length(c, t, False),
}


def check_tag(case: GeneratedCase, tag: TruthTag) -> CheckResult:
    """1 つの正解タグを確かめる。"""
    result = _CHECKERS[tag.kind](case, tag)
    if not result.passed:
        logger.debug("[verify][truth] %s %s failed: %s", case.name, tag.label, result.values)
    return result


def check_case(case: GeneratedCase) -> List[CheckResult]:
    """ケースの全タグを確かめる。"""
    return [check_tag(case, t) for t in case.truth]
