"""
src.sets.descriptors

閉凸集合の記述子。各記述子は不変（frozen）で、閉形式の射影を持つ。

- 射影は (m, d) の点群に対してまとめて計算する（`_project_batch`）。
- 次元を持たない WholeSpace / NonnegativeCone は dim=None で任意次元に適用できる。
- GeneralIntersection のみ反復（Dykstra）で、`src.sets.projection` 側で処理する。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import null_space, orth

from src.config.numerics import NumericsConfig
from src.errors import DimensionMismatchError, NonFiniteError, SetDescriptorError


def _frozen_array(x, name: str, ndim: int) -> np.ndarray:
    arr = np.array(x, dtype=np.float64)
    if ndim == 2 and arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.ndim != ndim:
        raise SetDescriptorError(f"{name} must be {ndim}-D, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _require_finite(arr: np.ndarray, name: str) -> None:
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains NaN or Inf")


class ConvexSet:
    """閉凸集合記述子の共通基底。"""

    #: JSON の "variant" に書く名前
    variant: str = ""

    @property
    def dim(self) -> Optional[int]:
        """外側の空間の次元。任意次元に適用できる記述子は None。"""
        return None

    def check_dim(self, d: int) -> None:
        if self.dim is not None and self.dim != d:
            raise DimensionMismatchError(f"{self.variant} lives in dim {self.dim}, got a point of dim {d}")

    def _project_batch(self, xs: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def closed_form(self) -> bool:
        return True


@dataclass(frozen=True, eq=False)
class WholeSpace(ConvexSet):
    """空間全体 X。"""
    ambient_dim: Optional[int] = None
    variant = "WholeSpace"

    @property
    def dim(self) -> Optional[int]:
        return self.ambient_dim

    def _project_batch(self, xs: np.ndarray) -> np.ndarray:
        return xs.copy()


@dataclass(frozen=True, eq=False)
class Singleton(ConvexSet):
    """1 点集合 {p}。"""
    point: np.ndarray
    variant = "Singleton"

    def __post_init__(self) -> None:
        p = _frozen_array(self.point, "point", 1)
        _require_finite(p, "point")
        object.__setattr__(self, "point", p)

    @property
    def dim(self) -> Optional[int]:
        return int(self.point.shape[0])

    def _project_batch(self, xs: np.ndarray) -> np.ndarray:
        return np.broadcast_to(self.point, xs.shape).copy()


@dataclass(frozen=True, eq=False)
class Ball(ConvexSet):
    """閉球 {x : ‖x − center‖ ≤ radius}（radius > 0）。"""
    center: np.ndarray
    radius: float = 1.0
    variant = "Ball"

    def __post_init__(self) -> None:
        c = _frozen_array(self.center, "center", 1)
        _require_finite(c, "center")
        r = float(self.radius)
        if not np.isfinite(r) or r <= 0:
            raise SetDescriptorError(f"ball radius must be > 0, got {self.radius}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)

    @property
    def dim(self) -> Optional[int]:
        return int(self.center.shape[0])

    def _project_batch(self, xs: np.ndarray) -> np.ndarray:
        diff = xs - self.center
        dist = np.linalg.norm(diff, axis=1, keepdims=True)
        # 球の内側は動かさない（scale = 1）
        scale = np.minimum(1.0, self.radius / np.maximum(dist, np.finfo(np.float64).tiny))
        return self.center + diff * scale


@dataclass(frozen=True, eq=False)
class AffineSubspace(ConvexSet):
    """
    アフィン部分空間 anchor + Y。basis の各行は Y の正規直交基底。

    射影は anchor + BᵀB(x − anchor)。basis が空（0 行）なら {anchor}。
    """
    anchor: np.ndarray
    basis: np.ndarray
    variant = "AffineSubspace"

    def __post_init__(self) -> None:
        a = _frozen_array(self.anchor, "anchor", 1)
        _require_finite(a, "anchor")
        b = np.array(self.basis, dtype=np.float64)
        if b.size == 0:
            b = np.zeros((0, a.shape[0]))
        if b.ndim != 2 or b.shape[1] != a.shape[0]:
            raise SetDescriptorError(f"basis must have shape (k, {a.shape[0]}), got {b.shape}")
        _require_finite(b, "basis")
        gram = b @ b.T
        if not np.allclose(gram, np.eye(b.shape[0]), rtol=0.0, atol=NumericsConfig.ORTHONORMAL_TOL):
            raise SetDescriptorError("affine subspace basis vectors must be orthonormal")
        b.setflags(write=False)
        object.__setattr__(self, "anchor", a)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> Optional[int]:
        return int(self.anchor.shape[0])

    @property
    def is_linear(self) -> bool:
        """anchor が Y に属する（= 原点を含む線形部分空間）かどうか。"""
        residual = self.anchor - self.basis.T @ (self.basis @ self.anchor)
        return bool(np.linalg.norm(residual) <= NumericsConfig.MEMBERSHIP_TOL)

    def _project_batch(self, xs: np.ndarray) -> np.ndarray:
        return self.anchor + ((xs - self.anchor) @ self.basis.T) @ self.basis

    # --- 生成ヘルパ ---
    @classmethod
    def from_spanning(cls, anchor: Sequence[float], vectors: Sequence[Sequence[float]]) -> "AffineSubspace":
        """任意の張る集合から正規直交基底を作る（scipy.linalg.orth）。"""
        a = np.asarray(anchor, dtype=np.float64)
        v = np.asarray(vectors, dtype=np.float64).reshape(-1, a.shape[0])
        basis = orth(v.T).T if v.size else np.zeros((0, a.shape[0]))
        return cls(a, _sign_normalize(basis))

    @classmethod
    def orthogonal_complement(
        cls, normals: Sequence[Sequence[float]], anchor: Optional[Sequence[float]] = None
    ) -> "AffineSubspace":
        """{normals}^⊥ を anchor（既定は原点）だけ平行移動した部分空間（scipy.linalg.null_space）。"""
        n = np.atleast_2d(np.asarray(normals, dtype=np.float64))
        d = n.shape[1]
        a = np.zeros(d) if anchor is None else np.asarray(anchor, dtype=np.float64)
        basis = null_space(n).T
        return cls(a, _sign_normalize(basis))

    @classmethod
    def coordinate(
        cls, dim: int, free_axes: Sequence[int], anchor: Optional[Sequence[float]] = None
    ) -> "AffineSubspace":
        """座標軸に沿った部分空間。基底は単位ベクトルそのもの（丸め誤差なし）。"""
        a = np.zeros(dim) if anchor is None else np.asarray(anchor, dtype=np.float64)
        basis = np.eye(dim)[sorted(set(int(i) for i in free_axes))]
        return cls(a, basis)


@dataclass(frozen=True, eq=False)
class Halfspace(ConvexSet):
    """半空間 {x : ⟨normal, x⟩ ≤ offset}（normal ≠ 0）。"""
    normal: np.ndarray
    offset: float = 0.0
    variant = "Halfspace"

    def __post_init__(self) -> None:
        a = _frozen_array(self.normal, "normal", 1)
        _require_finite(a, "normal")
        if float(np.linalg.norm(a)) <= 0.0:
            raise SetDescriptorError("halfspace normal must be nonzero")
        b = float(self.offset)
        if not np.isfinite(b):
            raise NonFiniteError("halfspace offset must be finite")
        object.__setattr__(self, "normal", a)
        object.__setattr__(self, "offset", b)

    @property
    def dim(self) -> Optional[int]:
        return int(self.normal.shape[0])

    def _project_batch(self, xs: np.ndarray) -> np.ndarray:
        excess = (xs @ self.normal - self.offset) / float(self.normal @ self.normal)
        return xs - np.maximum(excess, 0.0)[:, None] * self.normal


@dataclass(frozen=True, eq=False)
class Box(ConvexSet):
    """座標ごとの区間の直積 {x : lower ≤ x ≤ upper}。±∞ を許す。"""
    lower: np.ndarray
    upper: np.ndarray
    variant = "Box"

    def __post_init__(self) -> None:
        lo = _frozen_array(self.lower, "lower", 1)
        hi = _frozen_array(self.upper, "upper", 1)
        if lo.shape != hi.shape:
            raise SetDescriptorError(f"box bounds differ in shape: {lo.shape} vs {hi.shape}")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)):
            raise NonFiniteError("box bounds contain NaN")
        if np.any(lo == np.inf) or np.any(hi == -np.inf) or np.any(lo > hi):
            raise SetDescriptorError("box bounds must satisfy lower <= upper with finite-side infinities only")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> Optional[int]:
        return int(self.lower.shape[0])

    @property
    def fixed_axes(self) -> np.ndarray:
        return np.flatnonzero(self.lower == self.upper)

    def _project_batch(self, xs: np.ndarray) -> np.ndarray:
        return np.clip(xs, self.lower, self.upper)


@dataclass(frozen=True, eq=False)
class NonnegativeCone(ConvexSet):
    """非負錐 {x : x ≥ 0}。"""
    ambient_dim: Optional[int] = None
    variant = "NonnegativeCone"

    @property
    def dim(self) -> Optional[int]:
        return self.ambient_dim

    def _project_batch(self, xs: np.ndarray) -> np.ndarray:
        return np.maximum(xs, 0.0)


@dataclass(frozen=True, eq=False)
class BallCapSubspace(ConvexSet):
    """
    B ∩ Y（球の中心が Y に属する）。射影は P_B ∘ P_Y の合成で厳密に計算する。
    """
    ball: Ball
    subspace: AffineSubspace
    variant = "BallCapSubspace"

    def __post_init__(self) -> None:
        if self.ball.dim != self.subspace.dim:
            raise DimensionMismatchError("ball and subspace live in different dimensions")
        c = self.ball.center.reshape(1, -1)
        gap = float(np.linalg.norm(self.subspace._project_batch(c) - c))
        if gap > NumericsConfig.MEMBERSHIP_TOL:
            raise SetDescriptorError(f"ball center must lie in the subspace (distance {gap:.3e})")

    @property
    def dim(self) -> Optional[int]:
        return self.ball.dim

    def _project_batch(self, xs: np.ndarray) -> np.ndarray:
        return self.ball._project_batch(self.subspace._project_batch(xs))


@dataclass(frozen=True, eq=False)
class GeneralIntersection(ConvexSet):
    """有限個の閉凸集合の共通部分。射影は Dykstra 反復（近似）。"""
    sets: Tuple[ConvexSet, ...]
    variant = "GeneralIntersection"

    def __post_init__(self) -> None:
        members = tuple(self.sets)
        if not members:
            raise SetDescriptorError("intersection needs at least one set")
        dims = {s.dim for s in members if s.dim is not None}
        if len(dims) > 1:
            raise DimensionMismatchError(f"intersected sets disagree on dimension: {sorted(dims)}")
        object.__setattr__(self, "sets", members)

    @property
    def dim(self) -> Optional[int]:
        for s in self.sets:
            if s.dim is not None:
                return s.dim
        return None

    @property
    def closed_form(self) -> bool:
        return False


AnySet = Union[
    WholeSpace, Singleton, Ball, AffineSubspace, Halfspace, Box, NonnegativeCone, BallCapSubspace, GeneralIntersection
]

VARIANTS = {
    cls.variant: cls
    for cls in (
        WholeSpace, Singleton, Ball, AffineSubspace, Halfspace, Box, NonnegativeCone, BallCapSubspace, GeneralIntersection
    )
}


def _sign_normalize(basis: np.ndarray) -> np.ndarray:
    """各基底ベクトルの絶対値最大成分が正になるよう符号を揃える（出力の決定性のため）。"""
    out = np.array(basis, dtype=np.float64)
    for i in range(out.shape[0]):
        j = int(np.argmax(np.abs(out[i])))
        if out[i, j] < 0:
            out[i] = -out[i]
    return out
