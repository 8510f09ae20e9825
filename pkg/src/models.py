# src/models.py
"""
ツールキット全体で共有するデータモデル。

- Tolerance: 絶対/相対の許容誤差の組
- SequencePrefix: 有限の列の先頭部分（x_0, …, x_{N-1}）と裾の開始位置
- LimitKind / LimitEstimate: 裾の極限推定の三値判定
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from src.config.numerics import NumericsConfig
from src.errors import DimensionMismatchError, InvalidParameterError, InvalidToleranceError, NonFiniteError


@dataclass(frozen=True)
class Tolerance:
    """
    絶対誤差 abs と相対誤差 rel の組。判定は |差| ≤ abs + rel·scale。
    """
    abs: float = NumericsConfig.DEFAULT_ABS_TOL
    rel: float = NumericsConfig.DEFAULT_REL_TOL

    def __post_init__(self) -> None:
        if not (np.isfinite(self.abs) and np.isfinite(self.rel)):
            raise InvalidToleranceError(f"tolerance must be finite: abs={self.abs}, rel={self.rel}")
        if self.abs < 0 or self.rel < 0:
            raise InvalidToleranceError(f"tolerance must be nonnegative: abs={self.abs}, rel={self.rel}")
        if self.abs == 0 and self.rel == 0:
            raise InvalidToleranceError("tolerance abs and rel cannot both be zero")

    def bound(self, scale: Any = 0.0) -> Any:
        """scale（スカラーまたは配列）に対する許容幅 abs + rel·|scale|。"""
        return self.abs + self.rel * np.abs(scale)

    def as_dict(self) -> Dict[str, float]:
        return {"abs": float(self.abs), "rel": float(self.rel)}


@dataclass(frozen=True, eq=False)
class SequencePrefix:
    """
    列 (x_n) の有限な先頭部分。

    フィールド:
    - points: 形状 (N, d) の float64 配列。行 n が x_n。
    - tail_start: 「漸近的」統計を取り始める添字 N0（0 ≤ N0 < N）。
    """
    points: np.ndarray
    tail_start: int = 0
    # 生成器名などの付帯情報（計算には使わない）
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim == 1:
            # 1 次元の値の並びは (N, 1) とみなす
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise DimensionMismatchError(f"points must be a nonempty (N, d) array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise NonFiniteError("sequence contains NaN or Inf")
        tail = int(self.tail_start)
        if not 0 <= tail < pts.shape[0]:
            raise InvalidParameterError(
                f"tail_start must satisfy 0 <= tail_start < {pts.shape[0]}, got {self.tail_start}"
            )
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "tail_start", tail)

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    @property
    def length(self) -> int:
        return int(self.points.shape[0])

    def __len__(self) -> int:
        return self.length

    @property
    def tail(self) -> np.ndarray:
        return self.points[self.tail_start:]

    def with_tail(self, tail_start: int) -> "SequencePrefix":
        return SequencePrefix(self.points, tail_start, dict(self.meta))

    def map_points(self, points: np.ndarray) -> "SequencePrefix":
        """同じ裾の位置で点だけ差し替えた列（射影列などに使う）。"""
        return SequencePrefix(points, self.tail_start, dict(self.meta))

    def subsequence(self, stride: int, offset: int = 0) -> "SequencePrefix":
        """
        等差部分列 (x_{offset + k·stride})_k。裾の位置は元の N0 以上の最初の項に合わせる。
        """
        if stride < 1 or not 0 <= offset < stride:
            raise InvalidParameterError(f"invalid stride/offset: {stride}/{offset}")
        pts = self.points[offset::stride]
        # 元の添字 offset + k·stride ≥ N0 となる最小の k
        k0 = max(0, -(-(self.tail_start - offset) // stride))
        k0 = min(k0, pts.shape[0] - 1)
        meta = dict(self.meta)
        meta["subsequence"] = {"stride": stride, "offset": offset}
        return SequencePrefix(pts, k0, meta)


class LimitKind(str, Enum):
    CONVERGES = "Converges"
    DIVERGES = "Diverges"
    OSCILLATES = "Oscillates"


@dataclass(frozen=True)
class LimitEstimate:
    """
    裾の極限推定。Converges のとき limit は裾の中点、Oscillates のとき liminf/limsup は裾の下限/上限。
    """
    kind: LimitKind
    limit: Optional[float] = None
    liminf: Optional[float] = None
    limsup: Optional[float] = None
    tail_start: int = 0
    tail_length: int = 0

    @property
    def converges(self) -> bool:
        return self.kind is LimitKind.CONVERGES

    def as_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "limit": self.limit,
            "liminf": self.liminf,
            "limsup": self.limsup,
            "tail_start": self.tail_start,
            "tail_length": self.tail_length,
        }
