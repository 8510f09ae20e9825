"""
src.accenter.invariance

Opial 列ではどの部分列も同じ漸近中心を持つ。裾全体と等差部分列の中心を計算して比べる。

中心が自明に一致する集合（1 点集合など）でも仮定の必要性が見えるよう、
中心のずれと併せて漸近半径（目的関数値）のずれも報告する。
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.accenter.solver import AsymptoticCenterResult, asymptotic_center
from src.config.numerics import SolverConfig
from src.models import SequencePrefix
from src.sets.descriptors import ConvexSet

DEFAULT_SUBSEQUENCES: Tuple[Tuple[int, int], ...] = ((2, 0), (2, 1))


@dataclass(frozen=True)
class InvarianceReport:
    centers: Dict[str, List[float]]
    objectives: Dict[str, float]
    max_center_spread: float
    max_objective_spread: float

    def as_dict(self) -> Dict[str, Any]:
        return {
            "centers": self.centers,
            "objectives": self.objectives,
            "max_center_spread": self.max_center_spread,
            "max_objective_spread": self.max_objective_spread,
        }


def subsequence_center_invariance(
    seq: SequencePrefix,
    set_: ConvexSet,
    stride_subseqs: Optional[Sequence[Tuple[int, int]]] = None,
    solver_tol: float = SolverConfig.DEFAULT_SOLVER_TOL,
) -> InvarianceReport:
    """
    stride_subseqs: (stride, offset) の並び。省略時は偶数番/奇数番の 2 本。
    """
    subs = list(stride_subseqs) if stride_subseqs is not None else list(DEFAULT_SUBSEQUENCES)
    results: Dict[str, AsymptoticCenterResult] = {"full": asymptotic_center(seq, set_, solver_tol)}
    for stride, offset in subs:
        results[f"stride{stride}+{offset}"] = asymptotic_center(seq.subsequence(stride, offset), set_, solver_tol)

    labels = list(results)
    center_spread = 0.0
    objective_spread = 0.0
    for a, b in combinations(labels, 2):
        center_spread = max(center_spread, float(np.linalg.norm(results[a].center - results[b].center)))
        objective_spread = max(objective_spread, abs(results[a].objective - results[b].objective))
    return InvarianceReport(
        centers={k: [float(v) for v in r.center] for k, r in results.items()},
        objectives={k: r.objective for k, r in results.items()},
        max_center_spread=center_spread,
        max_objective_spread=objective_spread,
    )
