"""
src.generators.examples

正解つきの例の列を作る。どの列も閉じた式から厳密に作り、最小限の次元（切り詰めた ℓ²）に置く。

- 周期構造をもつ例の既定ホライズンは 64、基底方向へ逃げる例（e_n 型）は 256。
- 裾の開始位置の既定は horizon // 2。
- 各ケースには集合ごとの認証済みテスト点と noise_floor（裾の距離トレースの揺れの上限）が付く。
"""

from __future__ import annotations

import logging
import math
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from src.config.harness import GeneratorConfig
from src.config.numerics import ClassifierConfig
from src.errors import InvalidParameterError, UnknownNameError
from src.generators.cases import GeneratedCase
from src.generators.truth import TagKind, TruthTag
from src.models import SequencePrefix
from src.monotonicity.sampler import sample_test_points
from src.sets.descriptors import AffineSubspace, Ball, BallCapSubspace, Box, ConvexSet, Singleton, WholeSpace

logger = logging.getLogger(__name__)

EpsilonSpec = Union[Sequence[float], np.ndarray, Callable[[int], float], None]


class ExampleName(str, Enum):
    SQRT_NULL_INTERLEAVED = "sqrt-null-interleaved"
    SIGN_FLIP_PLANE = "sign-flip-plane"
    UNIT_VECTORS = "unit-vectors"
    UNIT_VECTORS_INTERLEAVED = "unit-vectors-interleaved"
    ANCHORED_DRIFT = "anchored-drift"
    VANISHING_OFFSET_SIGN_FLIP = "vanishing-offset-sign-flip"
    CONSTANT = "constant"


_DRIFT = {ExampleName.UNIT_VECTORS, ExampleName.UNIT_VECTORS_INTERLEAVED, ExampleName.ANCHORED_DRIFT}

# 番号による別名。大文字小文字は区別しない。
_EXAMPLE_ALIASES: Dict[str, ExampleName] = {
    "ex1_5": ExampleName.SQRT_NULL_INTERLEAVED,
    "ex2_8": ExampleName.SIGN_FLIP_PLANE,
    "ex2_15i": ExampleName.UNIT_VECTORS,
    "ex2_15ii": ExampleName.UNIT_VECTORS_INTERLEAVED,
    "ex3_12": ExampleName.ANCHORED_DRIFT,
    "ex3_15": ExampleName.VANISHING_OFFSET_SIGN_FLIP,
}


def example_names() -> List[str]:
    return [e.value for e in ExampleName]


def example_aliases() -> Dict[str, str]:
    return {"Ex" + k[2:]: v.value for k, v in _EXAMPLE_ALIASES.items()}


def resolve_example(name: Union[str, ExampleName]) -> ExampleName:
    if isinstance(name, ExampleName):
        return name
    try:
        return ExampleName(name)
    except ValueError:
        pass
    alias = _EXAMPLE_ALIASES.get(str(name).strip().lower())
    if alias is not None:
        return alias
    raise UnknownNameError("example", str(name), example_names() + list(example_aliases()))


def default_horizon(name: Union[str, ExampleName]) -> int:
    if resolve_example(name) in _DRIFT:
        return GeneratorConfig.DRIFT_HORIZON
    return GeneratorConfig.PERIODIC_HORIZON


def _unit(dim: int, *axes: int) -> np.ndarray:
    v = np.zeros(dim)
    for a in axes:
        v[a] += 1.0
    return v


def _test_points(sets: Dict[str, ConvexSet], seed: int, decay: Optional[float]) -> Dict[str, np.ndarray]:
    return {
        name: sample_test_points(s, GeneratorConfig.CASE_TEST_POINTS, seed=seed, decay=decay)
        for name, s in sets.items()
    }


def _epsilons(eps: EpsilonSpec, horizon: int) -> np.ndarray:
    """ε_n の列を作って検証する（正・狭義単調減少）。"""
    if eps is None:
        values = 1.0 / (np.arange(horizon, dtype=np.float64) + 1.0)
    elif callable(eps):
        values = np.array([float(eps(n)) for n in range(horizon)], dtype=np.float64)
    else:
        values = np.asarray(eps, dtype=np.float64).reshape(-1)
        if values.shape[0] < horizon:
            raise InvalidParameterError(f"eps has {values.shape[0]} terms but horizon is {horizon}")
        values = values[:horizon]
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
        raise InvalidParameterError("eps must be finite and strictly positive")
    if np.any(np.diff(values) >= 0.0):
        raise InvalidParameterError("eps must be strictly decreasing")
    return values


# --- 各例の構成 ---
def _sqrt_null_interleaved(horizon: int, tail_start: int, seed: int, **_: Any) -> GeneratedCase:
    n = np.arange(horizon)
    # 奇数番目 2k+1 に 1/√(k+1)、偶数番目は 0
    values = np.where(n % 2 == 1, 1.0 / np.sqrt((n + 1) // 2), 0.0)
    seq = SequencePrefix(values.reshape(-1, 1), tail_start)
    zero = Singleton(np.zeros(1))
    sets: Dict[str, ConvexSet] = {"zero": zero}
    truth = [
        TruthTag.make(TagKind.STRONG_LIMIT, vectors=[[0.0]]),
        TruthTag.make(TagKind.OPIAL_WRT, "zero"),
        TruthTag.make(TagKind.NOT_FEJER_WRT, "zero"),
        TruthTag.make(TagKind.NOT_FEJER_STAR_WRT, "zero"),
        TruthTag.make(TagKind.NOT_QUASI_FEJER_WRT, "zero"),
        TruthTag.make(TagKind.STRONG_CLUSTERS, vectors=[[0.0]]),
        TruthTag.make(TagKind.WEAK_LIMIT, vectors=[[0.0]]),
    ]
    return GeneratedCase(
        name=ExampleName.SQRT_NULL_INTERLEAVED.value,
        seq=seq,
        sets=sets,
        truth=truth,
        test_points={"zero": np.zeros((1, 1))},
        noise_floor=float(np.max(seq.tail)),
        description="(0, 1/√1, 0, 1/√2, …): Opial wrt {0}, neither Fejér* nor quasi-Fejér",
    )


def _sign_flip_plane(horizon: int, tail_start: int, seed: int, **_: Any) -> GeneratedCase:
    n = np.arange(horizon)
    pts = np.zeros((horizon, 2))
    pts[:, 0] = np.where(n % 2 == 0, 1.0, -1.0)
    seq = SequencePrefix(pts, tail_start)
    sets: Dict[str, ConvexSet] = {
        "C": Box(np.array([0.0, -1.0]), np.array([0.0, 1.0])),
        "affC": AffineSubspace.coordinate(2, [1]),
        "X": WholeSpace(2),
    }
    truth = [
        TruthTag.make(TagKind.OPIAL_WRT, "C"),
        TruthTag.make(TagKind.OPIAL_WRT, "affC"),
        TruthTag.make(TagKind.FEJER_WRT, "C"),
        TruthTag.make(TagKind.FEJER_WRT, "affC"),
        TruthTag.make(TagKind.NO_PROPER_SUPERSET, "affC", vectors=[[0.5, 0.0], [-1.0, 2.0]]),
        TruthTag.make(TagKind.NOT_OPIAL_WRT, "X", vectors=[[1.0, 1.0]]),
        TruthTag.make(TagKind.NO_STRONG_LIMIT),
        TruthTag.make(TagKind.STRONG_CLUSTERS, vectors=[[-1.0, 0.0], [1.0, 0.0]]),
        TruthTag.make(TagKind.WEAK_CLUSTERS, vectors=[[-1.0, 0.0], [1.0, 0.0]]),
        TruthTag.make(TagKind.DISTANCE_TRACE_PATTERN, "affC", pattern=[1.0]),
    ]
    return GeneratedCase(
        name=ExampleName.SIGN_FLIP_PLANE.value,
        seq=seq,
        sets=sets,
        truth=truth,
        test_points=_test_points(sets, seed, None),
        noise_floor=0.0,
        description="((−1)^n, 0) in R²: Opial wrt {0}×[−1,1] and {0}×R, not wrt any proper superset",
    )


def _unit_vectors(horizon: int, tail_start: int, seed: int, **_: Any) -> GeneratedCase:
    seq = SequencePrefix(np.eye(horizon), tail_start)
    sets: Dict[str, ConvexSet] = {"X": WholeSpace(horizon)}
    k = np.arange(horizon, dtype=np.float64)
    truth = [
        TruthTag.make(TagKind.OPIAL_WRT, "X"),
        TruthTag.make(TagKind.WEAK_LIMIT, vectors=[np.zeros(horizon)]),
        TruthTag.make(TagKind.NO_STRONG_LIMIT),
        TruthTag.make(TagKind.STRONG_CLUSTERS),
        # 座標が増加していく点では Fejér、減少していく点では破れる
        TruthTag.make(TagKind.FEJER_AT, vectors=[-1.0 / (k + 1.0)]),
        TruthTag.make(TagKind.NOT_FEJER_AT, vectors=[1.0 / (k + 1.0)]),
        TruthTag.make(TagKind.NOT_FINITE_LENGTH),
    ]
    return GeneratedCase(
        name=ExampleName.UNIT_VECTORS.value,
        seq=seq,
        sets=sets,
        truth=truth,
        test_points=_test_points(sets, seed, GeneratorConfig.DRIFT_SAMPLE_DECAY),
        noise_floor=0.0,
        description="(e_n): Opial wrt X, weakly null, no strong limit",
    )


def _unit_vectors_interleaved(horizon: int, tail_start: int, seed: int, **_: Any) -> GeneratedCase:
    dim = math.ceil(horizon / 2)
    pts = np.zeros((horizon, dim))
    for n in range(0, horizon, 2):
        pts[n, n // 2] = 1.0
    seq = SequencePrefix(pts, tail_start)
    sets: Dict[str, ConvexSet] = {"X": WholeSpace(dim), "zero": Singleton(np.zeros(dim))}
    truth = [
        TruthTag.make(TagKind.NOT_OPIAL_WRT, "X"),
        TruthTag.make(TagKind.NOT_OPIAL_WRT, "zero"),
        TruthTag.make(TagKind.WEAK_LIMIT, vectors=[np.zeros(dim)]),
        TruthTag.make(TagKind.NO_STRONG_LIMIT),
    ]
    return GeneratedCase(
        name=ExampleName.UNIT_VECTORS_INTERLEAVED.value,
        seq=seq,
        sets=sets,
        truth=truth,
        test_points=_test_points(sets, seed, GeneratorConfig.DRIFT_SAMPLE_DECAY),
        noise_floor=0.0,
        description="(e_0, 0, e_1, 0, …): weakly null but norms oscillate, so not Opial wrt X",
    )


def _anchored_drift(horizon: int, tail_start: int, seed: int, **_: Any) -> GeneratedCase:
    # e_{n+1} は n ≤ horizon−1 で添字 horizon まで使うので、次元は horizon + 2 で足りる
    dim = horizon + 2
    pts = np.zeros((horizon, dim))
    for n in range(horizon):
        pts[n] = _unit(dim, 0, 1) if n % 2 == 0 else _unit(dim, 1, n + 1)
    seq = SequencePrefix(pts, tail_start)
    y = AffineSubspace.coordinate(dim, range(1, dim))
    b = Ball(np.zeros(dim), 1.0)
    sets: Dict[str, ConvexSet] = {
        "Y": y,
        "B": b,
        "C": BallCapSubspace(b, y),
        "X": WholeSpace(dim),
    }
    e0, e1, e01 = _unit(dim, 0), _unit(dim, 1), _unit(dim, 0, 1)
    truth = [
        TruthTag.make(TagKind.OPIAL_WRT, "Y"),
        TruthTag.make(TagKind.OPIAL_WRT, "C"),
        TruthTag.make(TagKind.NOT_OPIAL_WRT, "X", vectors=[e0]),
        TruthTag.make(TagKind.DISTANCE_TRACE_PATTERN, "Y", pattern=[1.0, 0.0]),
        TruthTag.make(TagKind.DISTANCE_TRACE_PATTERN, "C", pattern=[1.0, math.sqrt(2.0) - 1.0]),
        TruthTag.make(TagKind.NO_STRONG_LIMIT),
        TruthTag.make(TagKind.STRONG_CLUSTERS, vectors=[e01]),
        TruthTag.make(TagKind.WEAK_CLUSTERS, vectors=[e1, e01]),
        TruthTag.make(TagKind.PROJECTED_WEAK_LIMIT, "Y", vectors=[e1]),
        TruthTag.make(TagKind.PROJECTED_NOT_WEAKLY_CONVERGENT, "C"),
    ]
    test_sets = {k: sets[k] for k in ("Y", "C", "X")}
    return GeneratedCase(
        name=ExampleName.ANCHORED_DRIFT.value,
        seq=seq,
        sets=sets,
        truth=truth,
        test_points=_test_points(test_sets, seed, GeneratorConfig.DRIFT_SAMPLE_DECAY),
        # 減衰させたテスト点の裾座標は 2·DECAY**tail_start 程度
        noise_floor=1e-6,
        description="e_0+e_1 (even n), e_1+e_{n+1} (odd n): P_Y x_n converges weakly, P_{B∩Y} x_n does not",
    )


def _vanishing_offset_sign_flip(
    horizon: int, tail_start: int, seed: int, eps: EpsilonSpec = None, **_: Any
) -> GeneratedCase:
    e = _epsilons(eps, horizon)
    n = np.arange(horizon)
    pts = np.stack([e, np.where(n % 2 == 0, 1.0, -1.0)], axis=1)
    seq = SequencePrefix(pts, tail_start)
    sets: Dict[str, ConvexSet] = {"Y": AffineSubspace.coordinate(2, [0])}
    truth = [
        TruthTag.make(TagKind.OPIAL_WRT, "Y"),
        TruthTag.make(TagKind.NO_PROPER_SUPERSET, "Y", vectors=[[0.0, 1.0], [0.5, -1.0]]),
        TruthTag.make(TagKind.PROJECTION_NOT_CONSTANT, "Y"),
        TruthTag.make(TagKind.NO_STRONG_LIMIT),
    ]
    # ‖x_n − (η, 0)‖² = (ε_n − η)² + 1 の裾での揺れは ε_N0 (ε_N0 + 2|η|) 以下
    e0 = float(e[tail_start])
    noise = e0 * (e0 + 2.0 * ClassifierConfig.SAMPLE_SCALE)
    return GeneratedCase(
        name=ExampleName.VANISHING_OFFSET_SIGN_FLIP.value,
        seq=seq,
        sets=sets,
        truth=truth,
        test_points=_test_points(sets, seed, None),
        noise_floor=noise,
        params={"eps_head": [float(v) for v in e[:4]]},
        description="(ε_n, (−1)^n): Opial wrt R×{0} but P_Y x_n → 0 ≠ P_Y x_0",
    )


def _constant(horizon: int, tail_start: int, seed: int, point: Optional[Sequence[float]] = None, **_: Any) -> GeneratedCase:
    p = np.asarray(GeneratorConfig.CONSTANT_POINT if point is None else point, dtype=np.float64).reshape(-1)
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise InvalidParameterError("point must be a non-empty finite vector")
    seq = SequencePrefix(np.tile(p, (horizon, 1)), tail_start)
    dim = p.shape[0]
    sets: Dict[str, ConvexSet] = {"X": WholeSpace(dim), "p": Singleton(p)}
    truth = [
        TruthTag.make(TagKind.FEJER_WRT, "X"),
        TruthTag.make(TagKind.OPIAL_WRT, "X"),
        TruthTag.make(TagKind.STRONG_LIMIT, vectors=[p]),
        TruthTag.make(TagKind.STRONG_CLUSTERS, vectors=[p]),
        TruthTag.make(TagKind.WEAK_LIMIT, vectors=[p]),
        TruthTag.make(TagKind.FINITE_LENGTH),
    ]
    return GeneratedCase(
        name=ExampleName.CONSTANT.value,
        seq=seq,
        sets=sets,
        truth=truth,
        test_points=_test_points(sets, seed, None),
        noise_floor=0.0,
        params={"point": [float(v) for v in p]},
        description="(p, p, p, …)",
    )


_BUILDERS: Dict[ExampleName, Callable[..., GeneratedCase]] = {
    ExampleName.SQRT_NULL_INTERLEAVED: _sqrt_null_interleaved,
    ExampleName.SIGN_FLIP_PLANE: _sign_flip_plane,
    ExampleName.UNIT_VECTORS: _unit_vectors,
    ExampleName.UNIT_VECTORS_INTERLEAVED: _unit_vectors_interleaved,
    ExampleName.ANCHORED_DRIFT: _anchored_drift,
    ExampleName.VANISHING_OFFSET_SIGN_FLIP: _vanishing_offset_sign_flip,
    ExampleName.CONSTANT: _constant,
}

_PARAMS: Dict[ExampleName, set] = {
    ExampleName.VANISHING_OFFSET_SIGN_FLIP: {"eps"},
    ExampleName.CONSTANT: {"point"},
}


def make_example(
    name: Union[str, ExampleName],
    horizon: Optional[int] = None,
    tail_start: Optional[int] = None,
    seed: int = ClassifierConfig.SAMPLE_SEED,
    **params: Any,
) -> GeneratedCase:
    """
    名前つきの例を生成する。

    - horizon: 既定は default_horizon(name)。MIN_HORIZON 未満はエラー
    - tail_start: 既定は horizon // 2
    - seed: 添付するテスト点のサンプラーのシード
    - params: 例ごとの追加引数（vanishing-offset-sign-flip の eps、constant の point）
    """
    ex = resolve_example(name)
    h = default_horizon(ex) if horizon is None else int(horizon)
    if h < GeneratorConfig.MIN_HORIZON:
        raise InvalidParameterError(f"horizon must be >= {GeneratorConfig.MIN_HORIZON}, got {h}")
    unknown = set(params) - _PARAMS.get(ex, set())
    if unknown:
        raise InvalidParameterError(f"{ex.value} does not accept parameters {sorted(unknown)}")
    n0 = h // 2 if tail_start is None else int(tail_start)
    if not 0 <= n0 < h:
        raise InvalidParameterError(f"tail_start must lie in [0, {h}), got {n0}")

    case = _BUILDERS[ex](h, n0, int(seed), **params)
    merged = {"horizon": h, "tail_start": n0, "seed": int(seed), **case.params}
    object.__setattr__(case, "params", merged)
    logger.debug("[generate] %s horizon=%d dim=%d tags=%d", ex.value, h, case.seq.dim, len(case.truth))
    return case
