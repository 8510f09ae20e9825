"""
src.hilbert.tail

有限の値列の裾から「極限が存在するか」を三値で推定する。

- Converges(limit): 裾の max−min が許容幅以下。limit は裾の中点。
- Diverges: 非有限値、または成長上限（NumericsConfig.GROWTH_BOUND）を超える値が裾にある。
- Oscillates(liminf, limsup): それ以外。幅が小さい場合は「ホライズン内では未決」と読む。
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from src.config.numerics import NumericsConfig
from src.errors import InvalidParameterError
from src.models import LimitEstimate, LimitKind, Tolerance


def tail_limit_estimate(
    values: Sequence[float] | np.ndarray,
    tail_start: int,
    tol: Tolerance,
    growth_bound: Optional[float] = None,
) -> LimitEstimate:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    if not 0 <= tail_start < arr.shape[0]:
        raise InvalidParameterError(f"tail is empty: tail_start={tail_start}, length={arr.shape[0]}")
    tail = arr[tail_start:]
    bound = NumericsConfig.GROWTH_BOUND if growth_bound is None else growth_bound
    n_tail = int(tail.shape[0])

    if not np.all(np.isfinite(tail)) or float(np.max(np.abs(tail))) > bound:
        return LimitEstimate(LimitKind.DIVERGES, tail_start=tail_start, tail_length=n_tail)

    lo = float(np.min(tail))
    hi = float(np.max(tail))
    # 相対幅の基準は裾の大きさ
    scale = max(abs(lo), abs(hi))
    if hi - lo <= tol.bound(scale):
        return LimitEstimate(
            LimitKind.CONVERGES,
            limit=0.5 * (lo + hi),
            liminf=lo,
            limsup=hi,
            tail_start=tail_start,
            tail_length=n_tail,
        )
    return LimitEstimate(
        LimitKind.OSCILLATES, liminf=lo, limsup=hi, tail_start=tail_start, tail_length=n_tail
    )
