"""
src.accenter.solver

漸近中心 A_C の近似: 裾の目的関数 f_T(x) = max_{n∈tail} ‖x − u_n‖² を C 上で最小化する。

f_T は係数 2 の強凸関数なので最小点は一意。

処理の流れ:
1. 裾の相異なる点 U（初出順）を取り出し、重心 z だけ平行移動して数値条件を整える。
2. 射影劣勾配: x_0 = P_C(裾の重心)、劣勾配 2(x − u_{n*})（n* は最大値を取る最小の添字）、
   ステップ 1/(k+1)。能動添字の重み（k+1）を積み上げて双対変数 λ とする。
3. 証明書: 単体上の双対関数
     g(λ) = d_C(ū_λ)² + Σλ_n‖u_n‖² − ‖ū_λ‖²,  ū_λ = Σλ_n u_n
   は常に g(λ) ≤ min f_T ≤ f_T(x)。gap = f_T(x) − g(λ) は劣最適性の上界で、
   強凸性から ‖x − ĉ‖² ≤ gap。
4. gap が solver_tol を上回ったまま劣勾配の予算を使い切ったら、双対側で加速射影勾配
   （単体への射影、適応リスタート付き）を回して仕上げる。主点は x(λ) = P_C(ū_λ)。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from src.accenter.simplex import project_simplex
from src.config.numerics import NumericsConfig, SolverConfig
from src.errors import InvalidParameterError, NonFiniteError
from src.models import SequencePrefix
from src.sets.descriptors import ConvexSet
from src.sets.projection import project_many

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AsymptoticCenterResult:
    """
    漸近中心の近似解。

    - center: 近似最小点（C に属する）
    - objective: f_T(center)
    - gap_certificate: f_T(center) − g(λ) ≥ 0（劣最適性の上界）
    - iterations: 劣勾配 + 仕上げの反復回数の合計
    - tail_start / tail_length: 使用した裾の窓
    """
    center: np.ndarray
    objective: float
    gap_certificate: float
    iterations: int
    tail_start: int
    tail_length: int
    dual_value: float
    converged: bool
    phases: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "center": [float(v) for v in self.center],
            "objective": self.objective,
            "gap_certificate": self.gap_certificate,
            "iterations": self.iterations,
            "tail_window": {"tail_start": self.tail_start, "tail_length": self.tail_length},
            "dual_value": self.dual_value,
            "converged": self.converged,
            "phases": self.phases,
        }


class _TailProblem:
    """平行移動済みの裾の点 V と、C − z への射影をまとめた作業用オブジェクト。"""

    def __init__(self, points: np.ndarray, set_: ConvexSet):
        self.shift = points.mean(axis=0)
        self.v = points - self.shift
        self.sq_norms = np.einsum("ij,ij->i", self.v, self.v)
        self.set_ = set_

    def proj(self, y: np.ndarray) -> np.ndarray:
        return project_many(self.set_, (y + self.shift).reshape(1, -1)).points[0] - self.shift

    def sq_dists(self, x: np.ndarray) -> np.ndarray:
        diff = self.v - x
        return np.einsum("ij,ij->i", diff, diff)

    def objective(self, x: np.ndarray) -> float:
        return float(np.max(self.sq_dists(x)))

    def dual(self, lam: np.ndarray) -> tuple[float, np.ndarray]:
        """(g(λ), P_C(ū_λ)) を返す。"""
        u_bar = lam @ self.v
        p = self.proj(u_bar)
        r = u_bar - p
        value = float(lam @ self.sq_norms - u_bar @ u_bar + r @ r)
        return value, p


def _distinct_rows(tail: np.ndarray) -> np.ndarray:
    _, first = np.unique(tail, axis=0, return_index=True)
    return tail[np.sort(first)]


def asymptotic_center(
    seq: SequencePrefix,
    set_: ConvexSet,
    solver_tol: float = SolverConfig.DEFAULT_SOLVER_TOL,
    tail_start: Optional[int] = None,
    max_iter: int = SolverConfig.SUBGRADIENT_MAX_ITER,
    polish_iter: int = SolverConfig.POLISH_MAX_ITER,
) -> AsymptoticCenterResult:
    if not solver_tol > 0:
        raise InvalidParameterError(f"solver_tol must be > 0, got {solver_tol}")
    start = seq.tail_start if tail_start is None else int(tail_start)
    if not 0 <= start < seq.length:
        raise InvalidParameterError(f"tail_start must lie in [0, {seq.length}), got {start}")
    set_.check_dim(seq.dim)
    tail = seq.points[start:]
    if float(np.max(np.linalg.norm(tail, axis=1))) > NumericsConfig.GROWTH_BOUND:
        raise NonFiniteError("sequence tail is not bounded within the configured growth bound")

    prob = _TailProblem(_distinct_rows(tail), set_)
    m = prob.v.shape[0]
    phases: Dict[str, Any] = {"distinct_tail_points": m}

    # --- 射影劣勾配 ---
    x = prob.proj(tail.mean(axis=0) - prob.shift)
    best_x, best_f = x, prob.objective(x)
    best_lam = np.zeros(m)
    best_lam[int(np.argmax(prob.sq_dists(x)))] = 1.0
    best_g, p = prob.dual(best_lam)
    f_p = prob.objective(p)
    if f_p < best_f:
        best_x, best_f = p, f_p
    weights = np.zeros(m)
    k = 0
    for k in range(max_iter):
        if best_f - best_g <= solver_tol:
            break
        sq = prob.sq_dists(x)
        n_star = int(np.argmax(sq))
        if sq[n_star] < best_f:
            best_x, best_f = x, float(sq[n_star])
        weights[n_star] += k + 1
        step = 1.0 / (k + 1)
        x = prob.proj(x - step * 2.0 * (x - prob.v[n_star]))
        if (k + 1) % SolverConfig.GAP_CHECK_EVERY == 0:
            lam = weights / weights.sum()
            g, p = prob.dual(lam)
            if g > best_g:
                best_g, best_lam = g, lam
            f_p = prob.objective(p)
            if f_p < best_f:
                best_x, best_f = p, f_p
    sub_iters = k
    phases["subgradient"] = {"iterations": sub_iters, "gap": max(best_f - best_g, 0.0)}

    # --- 双対側の仕上げ（加速射影勾配） ---
    polish_iters = 0
    if best_f - best_g > solver_tol and m > 1:
        lip = 2.0 * float(np.linalg.norm(prob.v, 2)) ** 2
        lam = best_lam.copy()
        y = lam.copy()
        t = 1.0
        g_cur = best_g
        for polish_iters in range(1, polish_iter + 1):
            _, p_y = prob.dual(y)
            grad = prob.sq_dists(p_y)
            lam_new = project_simplex(y + grad / lip)
            g_new, p_new = prob.dual(lam_new)
            f_new = prob.objective(p_new)
            if f_new < best_f:
                best_x, best_f = p_new, f_new
            if g_new > best_g:
                best_g, best_lam = g_new, lam_new
            if g_new < g_cur:
                # 単調性が崩れたら運動量を捨てる（適応リスタート）
                y, t = lam.copy(), 1.0
                continue
            t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
            y = lam_new + ((t - 1.0) / t_new) * (lam_new - lam)
            lam, t, g_cur = lam_new, t_new, g_new
            if best_f - best_g <= solver_tol:
                break
        phases["dual_polish"] = {"iterations": polish_iters, "gap": max(best_f - best_g, 0.0)}

    center = best_x + prob.shift
    gap = max(best_f - best_g, 0.0)
    converged = gap <= solver_tol
    if not converged:
        logger.warning("[accenter] certificate gap %.3e above target %.1e after budget", gap, solver_tol)
    diff = tail - center
    objective = float(np.max(np.einsum("ij,ij->i", diff, diff)))
    active = np.flatnonzero(best_lam > 1e-12)
    phases["active_tail_points"] = int(active.size)
    logger.debug("[accenter] m=%d gap=%.3e objective=%.6g", m, gap, objective)
    return AsymptoticCenterResult(
        center=center,
        objective=objective,
        gap_certificate=gap,
        iterations=sub_iters + polish_iters,
        tail_start=start,
        tail_length=int(tail.shape[0]),
        dual_value=best_g,
        converged=converged,
        phases=phases,
    )


def tail_objective(seq: SequencePrefix, x: np.ndarray, tail_start: Optional[int] = None) -> float:
    """f_T(x) = max_{n≥N0} ‖x − x_n‖²。"""
    start = seq.tail_start if tail_start is None else int(tail_start)
    diff = seq.points[start:] - np.asarray(x, dtype=np.float64)
    return float(np.max(np.einsum("ij,ij->i", diff, diff)))


def window_sensitivity(
    seq: SequencePrefix, set_: ConvexSet, solver_tol: float = SolverConfig.DEFAULT_SOLVER_TOL
) -> Dict[str, Any]:
    """宣言された裾と、その後半だけの窓で中心を計算し、ずれを報告する。"""
    full = asymptotic_center(seq, set_, solver_tol)
    late_start = seq.tail_start + (seq.length - seq.tail_start) // 2
    late = asymptotic_center(seq, set_, solver_tol, tail_start=min(late_start, seq.length - 1))
    return {
        "windows": [
            {"tail_start": full.tail_start, "tail_length": full.tail_length},
            {"tail_start": late.tail_start, "tail_length": late.tail_length},
        ],
        "center_full": [float(v) for v in full.center],
        "center_late": [float(v) for v in late.center],
        "shift": float(np.linalg.norm(full.center - late.center)),
    }
