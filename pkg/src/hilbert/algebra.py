"""
src.hilbert.algebra

密ベクトルの内積・ノルム・距離トレース。

- Vector は float64 の 1 次元 numpy 配列で表す（有限値のみ）。
- 無限次元の例は、先頭 d 座標に台を持つ切り詰め ℓ² 要素として扱う。
"""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from src.errors import DimensionMismatchError, NonFiniteError
from src.models import SequencePrefix

VectorLike = Union[np.ndarray, Sequence[float]]


def as_vector(x: VectorLike, dim: int | None = None) -> np.ndarray:
    """入力を検証済みの float64 ベクトルに変換する。dim を指定すると次元も検査する。"""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatchError(f"vector must be a nonempty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteError("vector contains NaN or Inf")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatchError(f"expected dim {dim}, got {v.shape[0]}")
    return v


def inner(a: VectorLike, b: VectorLike) -> float:
    """⟨a, b⟩ = Σ aᵢbᵢ。"""
    va = as_vector(a)
    vb = as_vector(b, va.shape[0])
    return float(np.dot(va, vb))


def norm(a: VectorLike) -> float:
    """‖a‖ = sqrt(⟨a, a⟩)。"""
    return float(np.linalg.norm(as_vector(a)))


def distance_trace(seq: SequencePrefix, c: VectorLike) -> np.ndarray:
    """(‖x_n − c‖)_{n<N} を順に返す。"""
    vc = as_vector(c, seq.dim)
    return np.linalg.norm(seq.points - vc, axis=1)


def distance_matrix(seq: SequencePrefix, points: np.ndarray) -> np.ndarray:
    """
    複数のテスト点に対する距離トレースをまとめて計算する。

    戻り値の形状は (M, N)：行 m がテスト点 c_m の距離トレース。
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    if pts.ndim != 2 or pts.shape[1] != seq.dim:
        raise DimensionMismatchError(f"test points must have shape (M, {seq.dim}), got {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise NonFiniteError("test points contain NaN or Inf")
    return np.linalg.norm(seq.points[None, :, :] - pts[:, None, :], axis=2)
