"""
src.generators.truth

生成器が各ケースに付ける「正解タグ」。どのタグも verify 側の検査関数で確かめられる。
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np


class TagKind(str, Enum):
    OPIAL_WRT = "OpialWrt"
    NOT_OPIAL_WRT = "NotOpialWrt"
    FEJER_WRT = "FejerWrt"
    NOT_FEJER_WRT = "NotFejerWrt"
    FEJER_AT = "FejerAt"
    NOT_FEJER_AT = "NotFejerAt"
    NOT_FEJER_STAR_WRT = "NotFejerStarWrt"
    NOT_QUASI_FEJER_WRT = "NotQuasiFejerWrt"
    STRONG_LIMIT = "StrongLimit"
    CONVERGENT = "Convergent"
    NO_STRONG_LIMIT = "NoStrongLimit"
    WEAK_LIMIT = "WeakLimit"
    STRONG_CLUSTERS = "StrongClusters"
    WEAK_CLUSTERS = "WeakClusters"
    DISTANCE_TRACE_PATTERN = "DistanceTracePattern"
    NO_PROPER_SUPERSET = "NoProperSuperset"
    PROJECTED_WEAK_LIMIT = "ProjectedWeakLimit"
    PROJECTED_NOT_WEAKLY_CONVERGENT = "ProjectedNotWeaklyConvergent"
    PROJECTION_NOT_CONSTANT = "ProjectionNotConstant"
    FINITE_LENGTH = "FiniteLength"
    NOT_FINITE_LENGTH = "NotFiniteLength"


Vec = Tuple[float, ...]


def _vec(v: Sequence[float] | np.ndarray) -> Vec:
    return tuple(float(t) for t in np.asarray(v, dtype=np.float64).reshape(-1))


@dataclass(frozen=True)
class TruthTag:
    """
    正解タグ。

    - set_name: 対象集合（GeneratedCase.sets のキー）
    - vectors: 極限点・クラスタ点・探索点（probe）など
    - pattern: 距離トレースの周期パターン
    """
    kind: TagKind
    set_name: Optional[str] = None
    vectors: Tuple[Vec, ...] = ()
    pattern: Vec = ()

    @classmethod
    def make(
        cls,
        kind: TagKind,
        set_name: Optional[str] = None,
        vectors: Sequence[Sequence[float] | np.ndarray] = (),
        pattern: Sequence[float] = (),
    ) -> "TruthTag":
        return cls(kind, set_name, tuple(_vec(v) for v in vectors), tuple(float(p) for p in pattern))

    @property
    def label(self) -> str:
        inner = self.set_name or ""
        if self.pattern:
            inner += ("; " if inner else "") + ",".join(f"{p:.6g}" for p in self.pattern)
        return f"{self.kind.value}({inner})"

    def as_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "set": self.set_name,
            "vectors": [list(v) for v in self.vectors],
            "pattern": list(self.pattern),
        }

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "TruthTag":
        return cls.make(TagKind(obj["kind"]), obj.get("set"), obj.get("vectors", ()), obj.get("pattern", ()))
