"""
src.monotonicity.classify

有限ホライズンでの単調性クラス分類（Fejér / Fejér* / 準 Fejér I・II・III / Opial）。

責務:
- 列とテスト点から距離行列 D[m, n] = ‖x_n − c_m‖ を作り、各クラスの判定を返す。
- Fails の判定には必ず違反した不等式を再現できる証拠（witness）を付ける。

判定の要点:
- Fejér: 全ステップで d_{n+1} ≤ d_n + tol（tol は d_n に対する相対幅込み）。
- Fejér*: テスト点ごとに最小の N を探す。裾（n ≥ tail_start）に違反が残れば Fails。
- 準 Fejér: ε_n = 許容幅を超えた分の正部。I/II はテスト点で共有（最大値）、III は点ごと。
  II/III の二乗差は 2·max(距離) で正規化してから総和可能性ヒューリスティックにかける。
- Opial: 裾が tol 内で非増加なら収束（下に有界な単調列）、そうでなければ
  tail_limit_estimate(limit_tol) が Converges であること。
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

import numpy as np

from src.config.numerics import ClassifierConfig
from src.errors import InvalidParameterError
from src.hilbert.algebra import distance_matrix
from src.hilbert.tail import tail_limit_estimate
from src.models import LimitEstimate, SequencePrefix, Tolerance
from src.monotonicity.summability import Status, SummabilityResult, summability_verdict

logger = logging.getLogger(__name__)

T = TypeVar("T")

TYPE_III_NOTE = "QuasiFejerIII is evaluated on the supplied finite test set only"


class ClassName(str, Enum):
    FEJER = "Fejer"
    FEJER_STAR = "FejerStar"
    QUASI_FEJER_I = "QuasiFejerI"
    QUASI_FEJER_II = "QuasiFejerII"
    QUASI_FEJER_III = "QuasiFejerIII"
    OPIAL = "Opial"


class OpialReason(str, Enum):
    """Opial 判定の点ごとの根拠。"""
    CONVERGES = "converges"
    MONOTONE_TAIL = "monotone-tail"
    OSCILLATES = "oscillates"


@dataclass(frozen=True)
class Witness:
    """違反の証拠。step n は x_n → x_{n+1} の遷移を指す。"""
    index: int
    point_index: int
    point: List[float]
    magnitude: float
    detail: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "n": self.index,
            "point_index": self.point_index,
            "point": self.point,
            "magnitude": self.magnitude,
            **self.detail,
        }


@dataclass(frozen=True)
class ClassVerdict:
    class_name: ClassName
    status: Status
    witness: Optional[Witness] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status is Status.FAILS and self.witness is None:
            raise ValueError(f"{self.class_name.value}: a Fails verdict needs a witness")

    def as_dict(self) -> Dict[str, Any]:
        return {
            "class": self.class_name.value,
            "status": self.status.value,
            "witness": self.witness.as_dict() if self.witness else None,
            "details": self.details,
        }


@dataclass(frozen=True)
class ClassificationReport:
    verdicts: List[ClassVerdict]
    test_points: np.ndarray
    tol: Tolerance
    limit_tol: Tolerance
    tail_start: int
    notes: List[str] = field(default_factory=list)

    def verdict(self, name: ClassName | str) -> ClassVerdict:
        key = ClassName(name)
        for v in self.verdicts:
            if v.class_name is key:
                return v
        raise KeyError(key)

    def status(self, name: ClassName | str) -> Status:
        return self.verdict(name).status

    def as_dict(self) -> Dict[str, Any]:
        return {
            "verdicts": [v.as_dict() for v in self.verdicts],
            "test_points": [[float(t) for t in p] for p in self.test_points],
            "tolerances": {"tol": self.tol.as_dict(), "limit_tol": self.limit_tol.as_dict()},
            "tail_start": self.tail_start,
            "notes": list(self.notes),
        }


def _map_points(fn: Callable[[int], T], count: int, max_workers: int) -> List[T]:
    """テスト点ごとの処理。並列でも結果は添字順に並ぶ。"""
    if max_workers <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, range(count)))


def _point(points: np.ndarray, m: int) -> List[float]:
    return [float(t) for t in points[m]]


def _fejer(steps: np.ndarray, bounds: np.ndarray, dist: np.ndarray, points: np.ndarray) -> ClassVerdict:
    viol = steps > bounds
    if not np.any(viol):
        return ClassVerdict(ClassName.FEJER, Status.HOLDS)
    # 最も早いステップの違反（同じステップなら添字の小さいテスト点）
    n = int(np.min(np.nonzero(viol)[1]))
    m = int(np.flatnonzero(viol[:, n])[0])
    w = Witness(
        n, m, _point(points, m), float(steps[m, n]),
        {"d_n": float(dist[m, n]), "d_next": float(dist[m, n + 1])},
    )
    return ClassVerdict(ClassName.FEJER, Status.FAILS, w)


def _fejer_star(
    steps: np.ndarray, bounds: np.ndarray, dist: np.ndarray, points: np.ndarray, tail_start: int
) -> ClassVerdict:
    viol = steps > bounds
    minimal_n: List[int] = []
    worst: Optional[tuple[int, int]] = None
    for m in range(viol.shape[0]):
        idx = np.flatnonzero(viol[m])
        last = int(idx[-1]) if idx.size else -1
        minimal_n.append(last + 1)
        if last >= tail_start and (worst is None or last > worst[0]):
            worst = (last, m)
    details = {"minimal_N": minimal_n}
    if worst is None:
        return ClassVerdict(ClassName.FEJER_STAR, Status.HOLDS, details=details)
    n, m = worst
    w = Witness(
        n, m, _point(points, m), float(steps[m, n]),
        {"d_n": float(dist[m, n]), "d_next": float(dist[m, n + 1]), "tail_start": tail_start},
    )
    return ClassVerdict(ClassName.FEJER_STAR, Status.FAILS, w, details)


def _summability_verdict(
    name: ClassName,
    eps: np.ndarray,
    tail_start: int,
    points: np.ndarray,
    point_of_step: Callable[[int], int],
    extra: Dict[str, Any],
) -> ClassVerdict:
    res: SummabilityResult = summability_verdict(eps, tail_start)
    details = {"summability": res.as_dict(), "excess": [float(e) for e in eps], **extra}
    if res.status is Status.FAILS:
        m = point_of_step(res.argmax)
        w = Witness(res.argmax, m, _point(points, m), float(eps[res.argmax]), {"heuristic": True})
        return ClassVerdict(name, Status.FAILS, w, details)
    return ClassVerdict(name, res.status, details=details)


def _opial(
    dist: np.ndarray,
    steps: np.ndarray,
    bounds: np.ndarray,
    points: np.ndarray,
    tail_start: int,
    limit_tol: Tolerance,
    max_workers: int,
) -> ClassVerdict:
    def judge(m: int) -> tuple[OpialReason, LimitEstimate]:
        est = tail_limit_estimate(dist[m], tail_start, limit_tol)
        if est.converges:
            return OpialReason.CONVERGES, est
        # 非増加の裾は 0 で下に有界なので収束する。揺れ幅だけでは決まらない点として区別して残す
        if not np.any(steps[m, tail_start:] > bounds[m, tail_start:]):
            return OpialReason.MONOTONE_TAIL, est
        return OpialReason.OSCILLATES, est

    results = _map_points(judge, dist.shape[0], max_workers)
    reasons = [r[0].value for r in results]
    details = {
        "limits": [r[1].as_dict() for r in results],
        "reasons": reasons,
        "monotone_tail": [r == OpialReason.MONOTONE_TAIL for r in reasons],
    }
    failed = [m for m, r in enumerate(reasons) if r == OpialReason.OSCILLATES]
    if not failed:
        leaning = reasons.count(OpialReason.MONOTONE_TAIL)
        if leaning:
            logger.info("[classify][opial] %d/%d point(s) hold by a monotone tail only (limit not settled within tol)",
                        leaning, len(reasons))
        return ClassVerdict(ClassName.OPIAL, Status.HOLDS, details=details)
    m = failed[0]
    est = results[m][1]
    tail = dist[m, tail_start:]
    n = tail_start + int(np.argmax(tail))
    spread = (est.limsup - est.liminf) if est.limsup is not None and est.liminf is not None else float("inf")
    w = Witness(n, m, _point(points, m), float(spread), {"limit": est.as_dict()})
    return ClassVerdict(ClassName.OPIAL, Status.FAILS, w, details)


def classify(
    seq: SequencePrefix,
    test_points: Sequence[Sequence[float]] | np.ndarray,
    tol: Tolerance = Tolerance(),
    limit_tol: Optional[Tolerance] = None,
    max_workers: int = ClassifierConfig.MAX_WORKERS,
) -> ClassificationReport:
    """
    列 seq をテスト点に関して分類する。

    引数:
    - test_points: 形状 (M, d)。呼び出し側が「意図した集合 C に属する」ことを保証する。
    - tol: 単調性の不等式の許容幅
    - limit_tol: Opial 判定（距離の極限の存在）の許容幅。省略時は tol
    """
    points = np.asarray(test_points, dtype=np.float64)
    if points.size == 0:
        raise InvalidParameterError("classify needs at least one test point")
    points = points.reshape(-1, seq.dim) if points.ndim == 1 else points
    ltol = limit_tol or tol
    dist = distance_matrix(seq, points)
    tail_start = seq.tail_start

    steps = dist[:, 1:] - dist[:, :-1]
    bounds = tol.bound(dist[:, :-1])
    # 許容幅を超えた分だけが ε_n に入る（Fejér が成り立てば ε ≡ 0）
    slack = np.maximum(steps - bounds, 0.0)
    squared = (dist[:, 1:] + dist[:, :-1]) * slack

    verdicts: List[ClassVerdict] = [
        _fejer(steps, bounds, dist, points),
        _fejer_star(steps, bounds, dist, points, tail_start),
    ]

    step_tail = tail_start
    if steps.shape[1] == 0:
        empty = np.zeros(0)
        for name in (ClassName.QUASI_FEJER_I, ClassName.QUASI_FEJER_II, ClassName.QUASI_FEJER_III):
            verdicts.append(_summability_verdict(name, empty, 0, points, lambda n: 0, {}))
    else:
        eps_i = slack.max(axis=0)
        verdicts.append(
            _summability_verdict(
                ClassName.QUASI_FEJER_I, eps_i, step_tail, points,
                lambda n: int(np.argmax(slack[:, n])), {},
            )
        )
        norm_ii = max(2.0 * float(dist.max()), 1.0)
        eps_ii = squared.max(axis=0) / norm_ii
        verdicts.append(
            _summability_verdict(
                ClassName.QUASI_FEJER_II, eps_ii, step_tail, points,
                lambda n: int(np.argmax(squared[:, n])), {"normalization": norm_ii},
            )
        )
        verdicts.append(_quasi_fejer_iii(dist, squared, points, step_tail, max_workers))

    verdicts.append(_opial(dist, steps, bounds, points, tail_start, ltol, max_workers))
    logger.debug(
        "[classify] N=%d d=%d points=%d -> %s",
        seq.length, seq.dim, points.shape[0],
        ", ".join(f"{v.class_name.value}={v.status.value}" for v in verdicts),
    )
    return ClassificationReport(verdicts, points, tol, ltol, tail_start, [TYPE_III_NOTE])


def _quasi_fejer_iii(
    dist: np.ndarray, squared: np.ndarray, points: np.ndarray, tail_start: int, max_workers: int
) -> ClassVerdict:
    def judge(m: int) -> tuple[np.ndarray, SummabilityResult]:
        norm = max(2.0 * float(dist[m].max()), 1.0)
        eps = squared[m] / norm
        return eps, summability_verdict(eps, tail_start)

    results = _map_points(judge, dist.shape[0], max_workers)
    statuses = [r[1].status for r in results]
    per_point = [r[1].as_dict() for r in results]
    failed = [m for m, s in enumerate(statuses) if s is Status.FAILS]
    if failed:
        m = failed[0]
        eps, res = results[m]
        details = {"per_point": per_point, "excess": [float(e) for e in eps]}
        w = Witness(res.argmax, m, _point(points, m), float(eps[res.argmax]), {"heuristic": True})
        return ClassVerdict(ClassName.QUASI_FEJER_III, Status.FAILS, w, details)
    status = Status.HOLDS if all(s is Status.HOLDS for s in statuses) else Status.UNDECIDED
    return ClassVerdict(ClassName.QUASI_FEJER_III, status, details={"per_point": per_point})
