"""
src.generators.cases

生成されたケース（列 + 関連する集合 + 正解タグ + 認証済みテスト点）。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from src.config.numerics import NumericsConfig
from src.generators.truth import TruthTag
from src.models import SequencePrefix, Tolerance
from src.sets.codec import set_to_json
from src.sets.descriptors import ConvexSet


@dataclass(frozen=True, eq=False)
class GeneratedCase:
    """
    フィールド:
    - name: 例名（make_example の名前、または km-<写像>）
    - seq: 列
    - sets: 名前付きの関連集合
    - truth: 正解タグ
    - test_points: 集合名 → その集合に属するテスト点 (M, d)
    - noise_floor: 裾の距離トレースの揺れの上限（Opial 判定の極限許容幅の目安）
    - params: 生成パラメータ
    """
    name: str
    seq: SequencePrefix
    sets: Dict[str, ConvexSet]
    truth: List[TruthTag]
    test_points: Dict[str, np.ndarray] = field(default_factory=dict)
    noise_floor: float = 0.0
    params: Dict[str, Any] = field(default_factory=dict)
    description: str = ""

    def limit_tolerance(self) -> Tolerance:
        """Opial 判定に使う極限の許容幅。noise_floor を少し上回るように取る。"""
        return Tolerance(abs=max(1.05 * self.noise_floor, NumericsConfig.DEFAULT_ABS_TOL))

    def sidecar(self) -> Dict[str, Any]:
        """列ファイルに添える truth JSON の中身。"""
        return {
            "name": self.name,
            "description": self.description,
            "params": self.params,
            "dim": self.seq.dim,
            "horizon": self.seq.length,
            "tail_start": self.seq.tail_start,
            "noise_floor": self.noise_floor,
            "sets": {k: set_to_json(s) for k, s in self.sets.items()},
            "truth": [t.as_dict() for t in self.truth],
            "test_points": {k: [[float(v) for v in p] for p in pts] for k, pts in self.test_points.items()},
        }
