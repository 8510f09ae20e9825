"""
src.accenter.bruteforce

低次元（d ≤ 3）用の総当たりオラクル。テストでソルバの答え合わせに使う。

- 格子点のうち集合に属するもの（distance ≤ tol）で f_T を評価し、最小点を返す。
- 格子点が 1 つも集合に入らない場合（格子外の 1 点集合など）は、格子点の射影を候補にする。
- 同値の最小は辞書式に最小の点を選ぶ（格子は辞書式順に生成している）。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.config.numerics import NumericsConfig, SolverConfig
from src.errors import DimensionMismatchError, InvalidParameterError
from src.models import SequencePrefix
from src.sets.descriptors import ConvexSet
from src.sets.projection import project_many


@dataclass(frozen=True)
class GridSpec:
    lower: Sequence[float]
    upper: Sequence[float]
    pitch: float

    def axes(self) -> list[np.ndarray]:
        lo = np.asarray(self.lower, dtype=np.float64)
        hi = np.asarray(self.upper, dtype=np.float64)
        if lo.shape != hi.shape or np.any(hi < lo) or not np.all(np.isfinite(lo) & np.isfinite(hi)):
            raise InvalidParameterError("grid box must be finite with lower <= upper")
        if not self.pitch > 0:
            raise InvalidParameterError(f"grid pitch must be > 0, got {self.pitch}")
        out = []
        for a, b in zip(lo, hi):
            count = int(round((b - a) / self.pitch)) + 1
            out.append(np.linspace(a, b, count))
        return out


def _grid_points(grid: GridSpec) -> np.ndarray:
    mesh = np.meshgrid(*grid.axes(), indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def _tail_values(candidates: np.ndarray, tail: np.ndarray) -> np.ndarray:
    out = np.empty(candidates.shape[0])
    chunk = SolverConfig.BRUTEFORCE_CHUNK
    for s in range(0, candidates.shape[0], chunk):
        c = candidates[s:s + chunk]
        diff = c[:, None, :] - tail[None, :, :]
        out[s:s + chunk] = np.einsum("gmd,gmd->gm", diff, diff).max(axis=1)
    return out


def asymptotic_center_bruteforce(
    seq: SequencePrefix,
    set_: ConvexSet,
    grid: GridSpec,
    tol: float = NumericsConfig.MEMBERSHIP_TOL,
    tail_start: Optional[int] = None,
) -> np.ndarray:
    if seq.dim > SolverConfig.BRUTEFORCE_MAX_DIM:
        raise InvalidParameterError(
            f"brute-force oracle supports dim <= {SolverConfig.BRUTEFORCE_MAX_DIM}, got {seq.dim}"
        )
    if len(grid.lower) != seq.dim:
        raise DimensionMismatchError(f"grid has dim {len(grid.lower)}, sequence has dim {seq.dim}")
    set_.check_dim(seq.dim)
    start = seq.tail_start if tail_start is None else int(tail_start)
    tail = np.unique(seq.points[start:], axis=0)

    pts = _grid_points(grid)
    proj = project_many(set_, pts)
    candidates = pts[proj.distances <= tol]
    if candidates.shape[0] == 0:
        candidates = np.unique(proj.points, axis=0)
    values = _tail_values(candidates, tail)
    return candidates[int(np.argmin(values))].copy()
