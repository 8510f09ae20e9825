"""
src.sets.geometry

集合の差の張る空間 span(C − C) の基底と、閉アフィン包 aff C。
"""

from __future__ import annotations

from typing import Any

import numpy as np
from scipy.linalg import orth

from src.config.numerics import NumericsConfig
from src.errors import DimensionMismatchError, SampleOutsideSetError, UnsupportedSetError
from src.sets.descriptors import (
    AffineSubspace,
    Ball,
    BallCapSubspace,
    Box,
    ConvexSet,
    GeneralIntersection,
    Halfspace,
    NonnegativeCone,
    Singleton,
    WholeSpace,
    _sign_normalize,
)
from src.sets.projection import project_many


def difference_span_basis(set_: ConvexSet, samples: Any, tol: float = NumericsConfig.MEMBERSHIP_TOL) -> np.ndarray:
    """
    span{c_i − c_0} の正規直交基底（行ベクトル）を返す。

    - AffineSubspace は保持している Y の基底をそのまま返す。
    - Singleton は空の基底（形状 (0, d)）。
    - それ以外はサンプル差分の列空間を scipy.linalg.orth で求め、符号を正規化する。
    """
    pts = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    if pts.size == 0:
        raise DimensionMismatchError("difference_span_basis needs at least one sample")
    res = project_many(set_, pts)
    worst = int(np.argmax(res.distances))
    if res.distances[worst] > tol:
        raise SampleOutsideSetError(
            f"sample {worst} lies outside the set (distance {res.distances[worst]:.3e} > {tol:.1e})"
        )
    d = pts.shape[1]
    if isinstance(set_, AffineSubspace):
        return np.array(set_.basis)
    if isinstance(set_, Singleton) or pts.shape[0] < 2:
        return np.zeros((0, d))
    diffs = pts[1:] - pts[0]
    if not np.any(diffs):
        return np.zeros((0, d))
    return _sign_normalize(orth(diffs.T).T)


def affine_hull(set_: ConvexSet) -> ConvexSet:
    """閉アフィン包を AffineSubspace か WholeSpace で返す。"""
    if isinstance(set_, (WholeSpace, AffineSubspace)):
        return set_
    if isinstance(set_, Singleton):
        return AffineSubspace(set_.point, np.zeros((0, set_.point.shape[0])))
    if isinstance(set_, (Ball, Halfspace, NonnegativeCone)):
        # 内部が空でない集合（切り詰め次元では非負錐も内部を持つ）
        return WholeSpace(set_.dim)
    if isinstance(set_, Box):
        fixed = set_.fixed_axes
        d = int(set_.dim)
        if fixed.size == 0:
            return WholeSpace(d)
        anchor = np.zeros(d)
        anchor[fixed] = set_.lower[fixed]
        free = [i for i in range(d) if i not in set(fixed.tolist())]
        return AffineSubspace.coordinate(d, free, anchor)
    if isinstance(set_, BallCapSubspace):
        return set_.subspace
    if isinstance(set_, GeneralIntersection):
        raise UnsupportedSetError("affine hull of a general intersection is not computable in closed form")
    raise UnsupportedSetError(f"affine hull not available for {type(set_).__name__}")
