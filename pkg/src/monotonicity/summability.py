"""
src.monotonicity.summability

非負列の総和可能性を有限ホライズンで判定するヒューリスティック。

判定（裾 = 添字 tail_start 以降）:
- Holds: 裾の最大値 ≤ step_tol かつ 裾の総和 ≤ mass_tol
- Fails: 裾を前半/後半に等分し、後半の質量 > mass_tol かつ 後半 ≥ ratio·前半
  （減衰が遅く、質量が残り続けている）
- UndecidedAtHorizon: それ以外
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict

import numpy as np

from src.config.numerics import ClassifierConfig


class Status(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNDECIDED = "UndecidedAtHorizon"


@dataclass(frozen=True)
class SummabilityResult:
    status: Status
    tail_max: float
    tail_mass: float
    first_half_mass: float
    second_half_mass: float
    # 裾で最大値を取る（元の列での）添字
    argmax: int

    def as_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "tail_max": self.tail_max,
            "tail_mass": self.tail_mass,
            "first_half_mass": self.first_half_mass,
            "second_half_mass": self.second_half_mass,
            "argmax": self.argmax,
        }


def summability_verdict(
    values: np.ndarray,
    tail_start: int,
    step_tol: float = ClassifierConfig.QF_STEP_TOL,
    mass_tol: float = ClassifierConfig.QF_MASS_TOL,
    ratio: float = ClassifierConfig.QF_DIVERGENCE_RATIO,
) -> SummabilityResult:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    start = min(max(int(tail_start), 0), max(arr.shape[0] - 1, 0))
    tail = arr[start:]
    if tail.size == 0:
        return SummabilityResult(Status.HOLDS, 0.0, 0.0, 0.0, 0.0, start)

    t_max = float(np.max(tail))
    mass = float(np.sum(tail))
    arg = start + int(np.argmax(tail))
    half = tail.shape[0] // 2
    m1 = float(np.sum(tail[:half]))
    m2 = float(np.sum(tail[tail.shape[0] - half:])) if half else 0.0

    if t_max <= step_tol and mass <= mass_tol:
        status = Status.HOLDS
    elif half and m2 > mass_tol and m2 >= ratio * m1:
        status = Status.FAILS
    else:
        status = Status.UNDECIDED
    return SummabilityResult(status, t_max, mass, m1, m2, arg)
