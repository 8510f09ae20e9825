"""
src.monotonicity.robbins_siegmund

決定論的 Robbins–Siegmund の検査。

  α_{n+1} ≤ (1+δ_n)α_n − β_n + ε_n   （全 n）
  Σδ_n, Σε_n が総和可能  ⇒  (α_n) は収束し、Σβ_n < ∞

有限列では、不等式を点ごとに確かめ、δ/ε の裾が総和可能と判定されたときに限り
α の裾の収束と Σβ の上界（足し合わせから得られる）を主張する。

  Σβ_n ≤ α_0 + (max α)·Σδ_n + Σε_n
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np

from src.config.numerics import ClassifierConfig
from src.errors import InvalidParameterError, NonFiniteError
from src.hilbert.tail import tail_limit_estimate
from src.models import LimitEstimate, Tolerance
from src.monotonicity.summability import Status, summability_verdict


@dataclass(frozen=True)
class RobbinsSiegmundReport:
    inequality_holds_all_n: bool
    # 最初の違反 {"n", "lhs", "rhs", "excess"}（成立時は None）
    witness: Optional[Dict[str, float]]
    delta_summable: Status
    eps_summable: Status
    # 前提（不等式 + 総和可能性）が揃ったときだけ結論を主張する
    conclusion_applies: bool
    alpha_verdict: LimitEstimate
    beta_sum: float
    beta_bound: float
    beta_sum_bounded: bool

    def as_dict(self) -> Dict[str, Any]:
        return {
            "inequality_holds_all_n": self.inequality_holds_all_n,
            "witness": self.witness,
            "delta_summable": self.delta_summable.value,
            "eps_summable": self.eps_summable.value,
            "conclusion_applies": self.conclusion_applies,
            "alpha_verdict": self.alpha_verdict.as_dict(),
            "beta_sum": self.beta_sum,
            "beta_bound": self.beta_bound,
            "beta_sum_bounded": self.beta_sum_bounded,
        }


def _nonnegative(name: str, values: Sequence[float] | np.ndarray) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains NaN or Inf")
    if np.any(arr < 0):
        i = int(np.flatnonzero(arr < 0)[0])
        raise InvalidParameterError(f"{name}[{i}] = {arr[i]} is negative")
    return arr


def robbins_siegmund_check(
    alpha: Sequence[float] | np.ndarray,
    beta: Sequence[float] | np.ndarray,
    delta: Sequence[float] | np.ndarray,
    eps: Sequence[float] | np.ndarray,
    horizon_tol: Tolerance = Tolerance(),
    tail_start: Optional[int] = None,
) -> RobbinsSiegmundReport:
    a = _nonnegative("alpha", alpha)
    b = _nonnegative("beta", beta)
    dl = _nonnegative("delta", delta)
    e = _nonnegative("eps", eps)
    if not (a.shape == b.shape == dl.shape == e.shape):
        raise InvalidParameterError(
            f"alpha/beta/delta/eps must have equal lengths, got {a.shape[0]}/{b.shape[0]}/{dl.shape[0]}/{e.shape[0]}"
        )
    if a.shape[0] < 2:
        raise InvalidParameterError("need at least two terms")
    start = int(a.shape[0] * ClassifierConfig.RS_TAIL_FRACTION) if tail_start is None else int(tail_start)
    start = min(max(start, 0), a.shape[0] - 1)

    lhs = a[1:]
    rhs = (1.0 + dl[:-1]) * a[:-1] - b[:-1] + e[:-1]
    excess = lhs - rhs
    viol = excess > horizon_tol.bound(np.maximum(np.abs(lhs), np.abs(rhs)))
    witness = None
    if np.any(viol):
        n = int(np.flatnonzero(viol)[0])
        witness = {"n": n, "lhs": float(lhs[n]), "rhs": float(rhs[n]), "excess": float(excess[n])}
    holds = witness is None

    # 和は漸化式が使う n < N-1 の範囲で取る
    d_sum = summability_verdict(dl[:-1], start).status
    e_sum = summability_verdict(e[:-1], start).status
    applies = holds and d_sum is Status.HOLDS and e_sum is Status.HOLDS

    alpha_est = tail_limit_estimate(a, start, horizon_tol)
    beta_sum = float(np.sum(b[:-1]))
    bound = float(a[0] + np.max(a) * np.sum(dl[:-1]) + np.sum(e[:-1]))
    return RobbinsSiegmundReport(
        inequality_holds_all_n=holds,
        witness=witness,
        delta_summable=d_sum,
        eps_summable=e_sum,
        conclusion_applies=applies,
        alpha_verdict=alpha_est,
        beta_sum=beta_sum,
        beta_bound=bound,
        beta_sum_bounded=bool(beta_sum <= bound + horizon_tol.bound(bound)),
    )


def simulate_recursion(
    alpha0: float, beta: np.ndarray, delta: np.ndarray, eps: np.ndarray
) -> np.ndarray:
    """α_{n+1} = (1+δ_n)α_n − β_n + ε_n を等号で回した α（負になれば 0 で止める）。"""
    n = len(beta)
    a = np.empty(n, dtype=np.float64)
    a[0] = alpha0
    for k in range(n - 1):
        a[k + 1] = max((1.0 + delta[k]) * a[k] - beta[k] + eps[k], 0.0)
    return a
