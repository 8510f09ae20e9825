"""
src.monotonicity.finite_length

有限長性 Σ‖x_n − x_{n+1}‖ < ∞ の診断。

内部を持つ集合に関して Fejér 単調な列は有限長になる。(e_n) のように弱収束しかしない列では
増分が √2 のまま残り、部分和は線形に伸びる。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List

import numpy as np

from src.config.numerics import ClassifierConfig
from src.errors import InvalidParameterError
from src.models import SequencePrefix
from src.monotonicity.summability import Status, summability_verdict


@dataclass(frozen=True)
class FiniteLengthReport:
    partial_sum: float
    increments: List[float]
    tail_max_increment: float
    increments_vanish: bool
    summability: Status

    def as_dict(self) -> Dict[str, Any]:
        return {
            "partial_sum": self.partial_sum,
            "tail_max_increment": self.tail_max_increment,
            "increments_vanish": self.increments_vanish,
            "summability": self.summability.value,
            "increments": self.increments,
        }


def finite_length(seq: SequencePrefix) -> FiniteLengthReport:
    if seq.length < 2:
        raise InvalidParameterError("finite_length needs at least two points")
    inc = np.linalg.norm(np.diff(seq.points, axis=0), axis=1)
    start = min(seq.tail_start, inc.shape[0] - 1)
    res = summability_verdict(inc, start)
    tail_max = float(np.max(inc[start:]))
    return FiniteLengthReport(
        partial_sum=float(np.sum(inc)),
        increments=[float(v) for v in inc],
        tail_max_increment=tail_max,
        increments_vanish=bool(tail_max <= ClassifierConfig.QF_STEP_TOL),
        summability=res.status,
    )
