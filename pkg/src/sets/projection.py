"""
src.sets.projection

射影 P_C と距離 d_C。閉形式の集合は一括計算、GeneralIntersection は Dykstra 反復。

処理の流れ（Dykstra, 周回型）:
  1. x ← 入力、各集合 i の補正量 p_i ← 0
  2. 各 i について y = P_i(x + p_i), p_i ← x + p_i − y, x ← y
  3. 1 周分の変化量が eps 以下で収束。改善が STALL_WINDOW 周続かなければ停滞で打ち切り
  4. 打ち切り後に各集合への距離を検査し、許容誤差を超えていれば空集合の疑いとして例外
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from src.config.numerics import NumericsConfig
from src.errors import DimensionMismatchError, InfeasibleSetError, NonFiniteError
from src.models import SequencePrefix
from src.sets.descriptors import ConvexSet, GeneralIntersection

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """
    射影の結果。

    - point: P_C(x)
    - distance: ‖x − P_C(x)‖
    - exact: 閉形式なら True、Dykstra なら False
    - gap: Dykstra の最終残差（閉形式では 0）
    """
    point: np.ndarray
    distance: float
    exact: bool = True
    gap: float = 0.0
    iterations: int = 0

    def as_dict(self) -> Dict[str, Any]:
        return {
            "point": [float(v) for v in self.point],
            "distance": float(self.distance),
            "exact": bool(self.exact),
            "gap": float(self.gap),
            "iterations": int(self.iterations),
        }


@dataclass(frozen=True, eq=False)
class BatchProjection:
    points: np.ndarray
    distances: np.ndarray
    exact: bool
    gap: float
    iterations: int


def _as_batch(set_: ConvexSet, xs: Any) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(xs, dtype=np.float64)
    single = arr.ndim == 1
    if single:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise DimensionMismatchError(f"expected a vector or (m, d) array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("projection input contains NaN or Inf")
    set_.check_dim(int(arr.shape[1]))
    return arr, single


def _raw_project(set_: ConvexSet, xs: np.ndarray) -> Tuple[np.ndarray, bool, float, int]:
    if isinstance(set_, GeneralIntersection):
        return _dykstra(set_, xs)
    return set_._project_batch(xs), True, 0.0, 0


def _dykstra(set_: GeneralIntersection, xs: np.ndarray) -> Tuple[np.ndarray, bool, float, int]:
    members = set_.sets
    x = xs.copy()
    incr = [np.zeros_like(xs) for _ in members]
    best_change = np.inf
    since_best = 0
    change = np.inf
    it = 0
    for it in range(1, NumericsConfig.DYKSTRA_MAX_ITER + 1):
        x_cycle = x
        for i, s in enumerate(members):
            y, _, _, _ = _raw_project(s, x + incr[i])
            incr[i] = x + incr[i] - y
            x = y
        change = float(np.max(np.linalg.norm(x - x_cycle, axis=1)))
        scale = 1.0 + float(np.max(np.linalg.norm(x, axis=1)))
        if change <= NumericsConfig.DYKSTRA_EPS * scale:
            break
        if change < best_change:
            best_change = change
            since_best = 0
        else:
            since_best += 1
            if since_best >= NumericsConfig.DYKSTRA_STALL_WINDOW:
                logger.debug("[sets][dykstra] stalled after %d cycles (change=%.3e)", it, change)
                break

    residual = 0.0
    for s in members:
        y, _, _, _ = _raw_project(s, x)
        residual = max(residual, float(np.max(np.linalg.norm(x - y, axis=1))))
    if residual > NumericsConfig.DYKSTRA_FEASIBILITY_TOL:
        raise InfeasibleSetError(
            f"intersection appears empty: residual distance {residual:.3e} after {it} Dykstra cycles"
        )
    gap = max(residual, change if np.isfinite(change) else 0.0)
    if it >= NumericsConfig.DYKSTRA_MAX_ITER:
        logger.warning("[sets][dykstra] budget exhausted (%d cycles), gap=%.3e", it, gap)
    return x, False, gap, it


def project_many(set_: ConvexSet, xs: Any) -> BatchProjection:
    """(m, d) の点群をまとめて射影する。"""
    arr, _ = _as_batch(set_, xs)
    pts, exact, gap, iters = _raw_project(set_, arr)
    dists = np.linalg.norm(arr - pts, axis=1)
    return BatchProjection(pts, dists, exact, gap, iters)


def project(set_: ConvexSet, x: Any) -> ProjectionResult:
    """最近点 P_C(x) とその距離。"""
    arr, _ = _as_batch(set_, x)
    if arr.shape[0] != 1:
        raise DimensionMismatchError("project() takes a single vector; use project_many() for batches")
    res = project_many(set_, arr)
    return ProjectionResult(
        point=res.points[0],
        distance=float(res.distances[0]),
        exact=res.exact,
        gap=res.gap,
        iterations=res.iterations,
    )


def distance(set_: ConvexSet, x: Any) -> float:
    """d_C(x) = project(set, x).distance。"""
    return project(set_, x).distance


def contains(set_: ConvexSet, x: Any, tol: float = NumericsConfig.MEMBERSHIP_TOL) -> bool:
    """所属判定 d_C(x) ≤ tol。"""
    return distance(set_, x) <= tol


def project_trace(seq: SequencePrefix, set_: ConvexSet) -> Tuple[SequencePrefix, np.ndarray]:
    """
    射影列 (P_C x_n) と距離トレース (d_C(x_n))。

    射影列は同じ裾の位置を持つ SequencePrefix として返すので、クラスタ抽出や分類にそのまま渡せる。
    """
    res = project_many(set_, seq.points)
    projected = seq.map_points(res.points)
    return projected, res.distances


def projection_constant(seq: SequencePrefix, set_: ConvexSet, tol: float = NumericsConfig.MEMBERSHIP_TOL) -> Dict[str, Any]:
    """
    P_C x_n ≡ P_C x_0 が成り立つかを調べる。

    線形部分空間に関して Fejér 単調な列では射影は一定になる。Opial 列では一般に成り立たない。
    """
    projected, _ = project_trace(seq, set_)
    drift = np.linalg.norm(projected.points - projected.points[0], axis=1)
    n_max = int(np.argmax(drift))
    return {
        "constant": bool(float(drift[n_max]) <= tol),
        "max_drift": float(drift[n_max]),
        "at_index": n_max,
        "first": [float(v) for v in projected.points[0]],
        "last": [float(v) for v in projected.points[-1]],
    }
