"""
src.monotonicity.sampler

テスト点の決定的サンプラー。固定の準乱数点群（Halton 列）を集合へ射影して返す。

- シードは Halton 列の読み飛ばし量として使う（同じシードなら常に同じ点群）。
- decay を指定すると j 番目の座標を decay**j 倍する。基底方向へ逃げる列（e_n 型）に対して、
  切り詰めたテスト点が ℓ² の元のように振る舞うようにするため。
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from scipy.stats import qmc

from src.config.numerics import ClassifierConfig
from src.errors import DimensionMismatchError, InvalidParameterError
from src.sets.descriptors import ConvexSet
from src.sets.projection import project_many


def quasi_random_cloud(dim: int, count: int, seed: int, scale: float) -> np.ndarray:
    """[-scale, scale]^dim 内の Halton 点群（count 点）。"""
    engine = qmc.Halton(d=dim, scramble=False)
    # 先頭の点は原点側の角なので、少なくとも 1 点読み飛ばす
    engine.fast_forward(int(seed) + 1)
    unit = engine.random(count)
    return scale * (2.0 * unit - 1.0)


def sample_test_points(
    set_: ConvexSet,
    count: int = ClassifierConfig.DEFAULT_TEST_POINTS,
    seed: int = ClassifierConfig.SAMPLE_SEED,
    dim: Optional[int] = None,
    scale: float = ClassifierConfig.SAMPLE_SCALE,
    decay: Optional[float] = None,
) -> np.ndarray:
    """集合 C に属するテスト点を count 個返す（形状 (count, d)）。"""
    if count < 1:
        raise InvalidParameterError(f"count must be >= 1, got {count}")
    if seed < 0:
        raise InvalidParameterError(f"seed must be >= 0, got {seed}")
    d = set_.dim if set_.dim is not None else dim
    if d is None:
        raise DimensionMismatchError("the set has no intrinsic dimension; pass dim explicitly")
    if dim is not None and set_.dim is not None and dim != set_.dim:
        raise DimensionMismatchError(f"requested dim {dim} but the set lives in dim {set_.dim}")
    cloud = quasi_random_cloud(int(d), count, seed, scale)
    if decay is not None:
        if not 0.0 < decay <= 1.0:
            raise InvalidParameterError(f"decay must lie in (0, 1], got {decay}")
        cloud = cloud * decay ** np.arange(int(d), dtype=np.float64)
    return project_many(set_, cloud).points
