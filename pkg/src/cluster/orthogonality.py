"""
src.cluster.orthogonality

Opial 列の弱クラスタ点の差は (C − C)^⊥ に入る。その数値検査。

  max_{i<j, k<l} |⟨w_i − w_j, c_k − c_l⟩| ≤ tol
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Optional, Sequence

import numpy as np

from src.config.numerics import ClusterConfig, NumericsConfig
from src.errors import SampleOutsideSetError
from src.sets.descriptors import ConvexSet
from src.sets.projection import project_many


@dataclass(frozen=True)
class OrthogonalityReport:
    max_abs_inner: float
    passed: bool
    tol: float
    note: Optional[str] = None
    # 最大値を与えた組（弱クラスタ点の添字対, サンプルの添字対）
    argmax: Optional[Dict[str, Any]] = None

    def as_dict(self) -> Dict[str, Any]:
        return {
            "max_abs_inner": self.max_abs_inner,
            "pass": self.passed,
            "tol": self.tol,
            "note": self.note,
            "argmax": self.argmax,
        }


def orthogonality_check(
    weak_points: Sequence[np.ndarray],
    set_: ConvexSet,
    samples: np.ndarray,
    tol: float = ClusterConfig.ORTHOGONALITY_TOL,
) -> OrthogonalityReport:
    if len(weak_points) < 2:
        return OrthogonalityReport(0.0, True, tol, note="fewer than two weak cluster points: vacuous pass")

    pts = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    res = project_many(set_, pts)
    bad = np.flatnonzero(res.distances > NumericsConfig.MEMBERSHIP_TOL)
    if bad.size:
        raise SampleOutsideSetError(
            f"sample {int(bad[0])} lies outside the set (distance {res.distances[bad[0]]:.3e})"
        )

    w = np.asarray(weak_points, dtype=np.float64)
    w_pairs = list(combinations(range(w.shape[0]), 2))
    c_pairs = list(combinations(range(pts.shape[0]), 2))
    if not c_pairs:
        return OrthogonalityReport(0.0, True, tol, note="fewer than two samples: no differences to test")
    dw = np.array([w[i] - w[j] for i, j in w_pairs])
    dc = np.array([pts[k] - pts[l] for k, l in c_pairs])
    grid = np.abs(dw @ dc.T)
    a, b = np.unravel_index(int(np.argmax(grid)), grid.shape)
    worst = float(grid[a, b])
    return OrthogonalityReport(
        worst,
        bool(worst <= tol),
        tol,
        argmax={"weak_pair": list(w_pairs[a]), "sample_pair": list(c_pairs[b])},
    )
