"""
src.cluster.extract

強クラスタ点と、弱クラスタ点の代理（proxy）の抽出。

強クラスタ:
  裾の点を貪欲に半径 merge_radius で束ね、RECURRENCE_COUNT 回以上現れたクラスタの重心を返す。

弱クラスタ（代理）:
  真の弱位相は有限精度では扱えないので、座標ごとの裾極限で代用する。
  - 候補となる部分列は「裾全体」と、ストライド 2..MAX_STRIDE の等差部分列（全オフセット）。
  - 各座標について
      ・部分列の裾で非ゼロとなる項が高々 1 個 → 基底方向へ逃げる成分（極限 0）
      ・max − min ≤ COORD_CAUCHY_TOL → Cauchy（極限は最後の値）
      ・どちらでもなければ、その部分列は採用しない
  - 採用された部分列の極限を半径で併合し、辞書式順に並べる。
  この規則が正しいのは、逃げる成分が基底方向にそろった生成器の例に限る。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.config.numerics import ClusterConfig
from src.errors import InvalidParameterError
from src.models import SequencePrefix

# 「非ゼロ」とみなす下限（生成器の例は厳密に 0 の座標を持つ）
_ZERO = 1e-15


@dataclass(frozen=True, eq=False)
class StrongCluster:
    center: np.ndarray
    count: int

    def as_dict(self) -> Dict[str, Any]:
        return {"center": [float(v) for v in self.center], "count": self.count}


@dataclass(frozen=True, eq=False)
class ClusterSet:
    strong: List[StrongCluster]
    weak_proxy: List[np.ndarray]
    # 抽出方法の記録（裾の位置、半径、採用された部分列など）
    method: Dict[str, Any] = field(default_factory=dict)

    @property
    def strong_points(self) -> List[np.ndarray]:
        return [c.center for c in self.strong]

    def strong_within_weak(self, radius: Optional[float] = None) -> bool:
        r = self.method.get("weak_merge_radius", ClusterConfig.COORD_CAUCHY_TOL) if radius is None else radius
        return all(
            any(np.linalg.norm(s.center - w) <= r for w in self.weak_proxy) for s in self.strong
        )

    def as_dict(self) -> Dict[str, Any]:
        return {
            "strong": [c.as_dict() for c in self.strong],
            "weak_proxy": [[float(v) for v in w] for w in self.weak_proxy],
            "method": self.method,
        }


def _lex_sorted(points: List[np.ndarray]) -> List[np.ndarray]:
    return sorted(points, key=lambda p: tuple(float(v) for v in p))


def strong_clusters(
    seq: SequencePrefix,
    merge_radius: float = ClusterConfig.MERGE_RADIUS,
    recurrence: int = ClusterConfig.RECURRENCE_COUNT,
) -> List[StrongCluster]:
    """裾の点の貪欲クラスタリング。再帰的に現れる（recurrence 回以上の）クラスタの重心を返す。"""
    if merge_radius <= 0:
        raise InvalidParameterError(f"merge_radius must be > 0, got {merge_radius}")
    seeds: List[np.ndarray] = []
    members: List[List[int]] = []
    tail = seq.tail
    for i, x in enumerate(tail):
        placed = False
        for k, s in enumerate(seeds):
            if np.linalg.norm(x - s) <= merge_radius:
                members[k].append(i)
                placed = True
                break
        if not placed:
            seeds.append(x)
            members.append([i])
    out = [
        StrongCluster(tail[idx].mean(axis=0), len(idx))
        for idx in members
        if len(idx) >= recurrence
    ]
    out.sort(key=lambda c: tuple(float(v) for v in c.center))
    return out


def _coordinate_limits(tail: np.ndarray, coord_tol: float) -> Optional[np.ndarray]:
    """部分列の裾から座標ごとの極限を求める。どれかの座標が判定不能なら None。"""
    spread = tail.max(axis=0) - tail.min(axis=0)
    support = np.count_nonzero(np.abs(tail) > _ZERO, axis=0)
    cauchy = spread <= coord_tol
    escaping = support <= 1
    if not np.all(cauchy | escaping):
        return None
    return np.where(cauchy, tail[-1], 0.0)


def _candidates(seq: SequencePrefix, max_stride: int) -> List[Tuple[int, int]]:
    out = [(1, 0)]
    for stride in range(2, max_stride + 1):
        out.extend((stride, off) for off in range(stride))
    return out


def weak_clusters_proxy(
    seq: SequencePrefix,
    merge_radius: float = ClusterConfig.MERGE_RADIUS,
    coord_tol: float = ClusterConfig.COORD_CAUCHY_TOL,
    max_stride: int = ClusterConfig.MAX_STRIDE,
    min_terms: int = ClusterConfig.MIN_SUBSEQUENCE_TERMS,
) -> List[np.ndarray]:
    return _weak_proxy(seq, merge_radius, coord_tol, max_stride, min_terms)[0]


def _weak_proxy(
    seq: SequencePrefix, merge_radius: float, coord_tol: float, max_stride: int, min_terms: int
) -> Tuple[List[np.ndarray], List[Dict[str, int]]]:
    if merge_radius <= 0:
        raise InvalidParameterError(f"merge_radius must be > 0, got {merge_radius}")
    accepted: List[Tuple[Tuple[int, int], np.ndarray]] = []
    covered_strides = set()
    for stride, offset in _candidates(seq, max_stride):
        if any(stride % s == 0 for s in covered_strides):
            # 約数のストライドが全オフセットで採用済みなら細分は不要
            continue
        sub = seq if stride == 1 else seq.subsequence(stride, offset)
        tail = sub.tail
        if tail.shape[0] < min_terms:
            continue
        lim = _coordinate_limits(tail, coord_tol)
        if lim is None:
            continue
        accepted.append(((stride, offset), lim))
        if stride == 1:
            # 裾全体が 1 つの極限を持つ
            break
        if sum(1 for (s, _), _ in accepted if s == stride) == stride:
            covered_strides.add(stride)

    radius = max(merge_radius, coord_tol)
    merged: List[np.ndarray] = []
    for _, lim in accepted:
        if not any(np.linalg.norm(lim - m) <= radius for m in merged):
            merged.append(lim)
    used = [{"stride": s, "offset": o} for (s, o), _ in accepted]
    return _lex_sorted(merged), used


def extract_clusters(
    seq: SequencePrefix,
    merge_radius: float = ClusterConfig.MERGE_RADIUS,
    coord_tol: float = ClusterConfig.COORD_CAUCHY_TOL,
    recurrence: int = ClusterConfig.RECURRENCE_COUNT,
) -> ClusterSet:
    """強クラスタと弱クラスタ代理をまとめて抽出し、方法のメタデータを付ける。"""
    strong = strong_clusters(seq, merge_radius, recurrence)
    weak, used = _weak_proxy(
        seq, merge_radius, coord_tol, ClusterConfig.MAX_STRIDE, ClusterConfig.MIN_SUBSEQUENCE_TERMS
    )
    method = {
        "tail_start": seq.tail_start,
        "tail_length": int(seq.tail.shape[0]),
        "merge_radius": merge_radius,
        "weak_merge_radius": max(merge_radius, coord_tol),
        "coord_cauchy_tol": coord_tol,
        "recurrence": recurrence,
        "accepted_subsequences": used,
        "proxy": "coordinate-wise tail limits of arithmetic subsequences",
    }
    return ClusterSet(strong, weak, method)
