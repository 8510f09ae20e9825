"""
src.accenter.simplex

単体 Δ = {λ ≥ 0, Σλ = 1} へのユークリッド射影（ソート法）。
"""

from __future__ import annotations

import numpy as np


def project_simplex(y: np.ndarray, total: float = 1.0) -> np.ndarray:
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - total
    ks = np.arange(1, y.shape[0] + 1)
    k = int(np.nonzero(u - css / ks > 0)[0][-1])
    theta = css[k] / (k + 1)
    return np.maximum(y - theta, 0.0)
