"""
src.generators.predictor

Opial 列の距離極限 ℓ(c) = lim ‖x_n − c‖ のアフィン結合に関する恒等式

    ℓ²(Σλ_i c_i) = Σλ_i ℓ²(c_i) − ½ ΣΣ λ_i λ_j ‖c_i − c_j‖²   （Σλ_i = 1）

で予測値を計算し、結合点で実際に測った極限と並べて返す。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import InvalidParameterError, TailNotConvergedError
from src.generators.cases import GeneratedCase
from src.hilbert.algebra import as_vector, distance_trace
from src.hilbert.tail import tail_limit_estimate
from src.models import Tolerance

logger = logging.getLogger(__name__)

# Σλ = 1 の判定
_AFFINE_TOL = 1e-12


@dataclass(frozen=True)
class PredictionReport:
    """
    - predicted: 予測値 ℓ(Σλc)（式の値の非負平方根）
    - formula_value: クランプ前の式の値（ℓ² の予測）
    - clamped: 式の値が許容幅を超えて負になり 0 に切り上げたか
    - measured: 結合点で測った裾の極限（収束しなければ None）
    - point: 結合点 Σλc
    - limits: 各 c_i での極限 ℓ(c_i)
    """
    predicted: float
    formula_value: float
    clamped: bool
    measured: Optional[float]
    point: np.ndarray
    limits: Tuple[float, ...]

    @property
    def error(self) -> Optional[float]:
        return None if self.measured is None else abs(self.predicted - self.measured)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "predicted": self.predicted,
            "formula_value": self.formula_value,
            "clamped": self.clamped,
            "measured": self.measured,
            "error": self.error,
            "point": [float(v) for v in self.point],
            "limits": list(self.limits),
        }


def _limit(case: GeneratedCase, c: np.ndarray, tol: Tolerance) -> float:
    est = tail_limit_estimate(distance_trace(case.seq, c), case.seq.tail_start, tol)
    if not est.converges:
        raise TailNotConvergedError(
            f"distance trace of {case.name} does not settle at c={np.round(c, 6).tolist()} "
            f"(tail range [{est.liminf:.6g}, {est.limsup:.6g}])"
        )
    return float(est.limit)


def opial_limit_predictor(
    case: GeneratedCase,
    coeffs: Sequence[Tuple[float, Sequence[float] | np.ndarray]],
    tol: Optional[Tolerance] = None,
) -> PredictionReport:
    """
    アフィン結合 Σλ_i c_i での距離極限を予測する。

    - coeffs: (λ_i, c_i) の並び。Σλ_i = 1 でなければ InvalidParameterError
    - tol: 極限を測るときの許容幅（既定は case.limit_tolerance()）
    - いずれかの c_i で裾が収束しなければ TailNotConvergedError
    """
    if not coeffs:
        raise InvalidParameterError("at least one (lambda, point) pair is required")
    lam = np.array([float(l) for l, _ in coeffs], dtype=np.float64)
    if not np.all(np.isfinite(lam)):
        raise InvalidParameterError("coefficients must be finite")
    if abs(float(lam.sum()) - 1.0) > _AFFINE_TOL:
        raise InvalidParameterError(f"coefficients must sum to 1, got {float(lam.sum())!r}")
    pts = np.stack([as_vector(c, case.seq.dim) for _, c in coeffs])
    t = case.limit_tolerance() if tol is None else tol

    limits: List[float] = [_limit(case, c, t) for c in pts]
    ell = np.asarray(limits)
    gram = np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=2)
    value = float(lam @ ell**2 - 0.5 * lam @ gram @ lam)

    clamped = False
    if value < 0.0:
        # 予測値そのものの許容幅で丸め誤差と本物の負値を区別する
        if -value > t.bound(float(np.max(ell**2))):
            clamped = True
            logger.warning("[predictor] formula value %.3e is negative for %s; clamped to 0", value, case.name)
        value_sq = 0.0
    else:
        value_sq = value

    point = lam @ pts
    try:
        measured: Optional[float] = _limit(case, point, t)
    except TailNotConvergedError:
        measured = None
    return PredictionReport(
        predicted=math.sqrt(value_sq),
        formula_value=value,
        clamped=clamped,
        measured=measured,
        point=point,
        limits=tuple(limits),
    )
