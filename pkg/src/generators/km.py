"""
src.generators.km

Krasnosel'skii–Mann 反復 x_{n+1} = (1−λ)x_n + λT(x_n) で Fejér 単調な列を作る。

写像 T は組み込みの非拡大写像（閉じた列挙）に限る。どれも不動点集合 Fix T の記述子を持つので、
生成したケースに FejerWrt(FixT) の正解タグを付けられる。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from src.config.harness import GeneratorConfig
from src.config.numerics import ClassifierConfig
from src.errors import DimensionMismatchError, InfeasibleSetError, InvalidParameterError, UnknownNameError
from src.generators.cases import GeneratedCase
from src.generators.truth import TagKind, TruthTag
from src.hilbert.algebra import as_vector
from src.models import SequencePrefix
from src.monotonicity.sampler import sample_test_points
from src.sets.descriptors import AffineSubspace, ConvexSet, GeneralIntersection, Singleton, WholeSpace
from src.sets.projection import project

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdentityMap:
    """T = I。Fix T = X。"""
    kind = "identity"


@dataclass(frozen=True, eq=False)
class ProjectionComposition:
    """T = P_{C_m} ∘ … ∘ P_{C_1}。共通部分が空でなければ Fix T = ∩ C_i。"""
    sets: Tuple[ConvexSet, ...]
    kind = "projection-composition"

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(self.sets))
        if not self.sets:
            raise InvalidParameterError("projection composition needs at least one set")


@dataclass(frozen=True, eq=False)
class AveragedReflection:
    """T = (1−α)I + α(2P_C − I)、α ∈ (0, 1)。Fix T = C。"""
    set_: ConvexSet
    alpha: float = 0.5
    kind = "averaged-reflection"

    def __post_init__(self) -> None:
        if not 0.0 < float(self.alpha) < 1.0:
            raise InvalidParameterError(f"alpha must lie in (0, 1), got {self.alpha}")


@dataclass(frozen=True, eq=False)
class PlaneRotation:
    """
    中心 center のまわりに座標 0, 1 の平面で角 θ だけ回す（他の座標は固定）。

    等長写像なので平均化写像ではない。λ < 1 で緩和すれば平均化される。
    """
    theta: float
    center: Tuple[float, ...] = (0.0, 0.0)
    kind = "plane-rotation"

    def __post_init__(self) -> None:
        c = tuple(float(v) for v in self.center)
        if len(c) < 2:
            raise InvalidParameterError("rotation needs a center of dimension >= 2")
        if math.isclose(math.remainder(float(self.theta), 2.0 * math.pi), 0.0, abs_tol=1e-12):
            raise InvalidParameterError("rotation angle must not be a multiple of 2π")
        object.__setattr__(self, "center", c)


NonexpansiveMapSpec = Union[IdentityMap, ProjectionComposition, AveragedReflection, PlaneRotation]

MAP_KINDS = ("identity", "projection-composition", "averaged-reflection", "plane-rotation")


def apply_map(spec: NonexpansiveMapSpec, x: np.ndarray) -> np.ndarray:
    """T(x) を 1 点について計算する。"""
    if isinstance(spec, IdentityMap):
        return x.copy()
    if isinstance(spec, ProjectionComposition):
        y = x
        for s in spec.sets:
            y = project(s, y).point
        return y
    if isinstance(spec, AveragedReflection):
        p = project(spec.set_, x).point
        return (1.0 - spec.alpha) * x + spec.alpha * (2.0 * p - x)
    if isinstance(spec, PlaneRotation):
        c = np.asarray(spec.center)
        if x.shape[0] != c.shape[0]:
            raise DimensionMismatchError(f"rotation center has dim {c.shape[0]}, iterate has dim {x.shape[0]}")
        cos, sin = math.cos(spec.theta), math.sin(spec.theta)
        y = x.copy()
        u, v = x[0] - c[0], x[1] - c[1]
        y[0] = c[0] + cos * u - sin * v
        y[1] = c[1] + sin * u + cos * v
        return y
    raise UnknownNameError("map spec", type(spec).__name__, MAP_KINDS)


def fixed_point_set(spec: NonexpansiveMapSpec, dim: int) -> ConvexSet:
    """Fix T の記述子。"""
    if isinstance(spec, IdentityMap):
        return WholeSpace(dim)
    if isinstance(spec, ProjectionComposition):
        return spec.sets[0] if len(spec.sets) == 1 else GeneralIntersection(spec.sets)
    if isinstance(spec, AveragedReflection):
        return spec.set_
    if isinstance(spec, PlaneRotation):
        c = np.asarray(spec.center)
        if dim == 2:
            return Singleton(c)
        return AffineSubspace.coordinate(dim, range(2, dim), anchor=c)
    raise UnknownNameError("map spec", type(spec).__name__, MAP_KINDS)


def is_averaged(spec: NonexpansiveMapSpec) -> bool:
    """T 自身が平均化写像か（回転は等長写像なので False）。"""
    return not isinstance(spec, PlaneRotation)


def km_iteration(
    map_spec: NonexpansiveMapSpec,
    x0: Sequence[float] | np.ndarray,
    relaxation: float = 1.0,
    horizon: int = GeneratorConfig.PERIODIC_HORIZON,
    tail_start: Optional[int] = None,
    seed: int = ClassifierConfig.SAMPLE_SEED,
) -> GeneratedCase:
    """
    KM 反復の列を生成する。

    正解タグ:
    - FejerWrt(FixT) と OpialWrt(FixT) は常に付く
    - 緩和した反復作用素 (1−λ)I + λT が平均化写像なら Convergent も付く
    """
    if not isinstance(map_spec, (IdentityMap, ProjectionComposition, AveragedReflection, PlaneRotation)):
        raise UnknownNameError("map spec", type(map_spec).__name__, MAP_KINDS)
    lam = float(relaxation)
    if not 0.0 < lam <= 1.0:
        raise InvalidParameterError(f"relaxation must lie in (0, 1], got {relaxation}")
    h = int(horizon)
    if h < GeneratorConfig.MIN_HORIZON:
        raise InvalidParameterError(f"horizon must be >= {GeneratorConfig.MIN_HORIZON}, got {h}")
    n0 = h // 2 if tail_start is None else int(tail_start)

    x = as_vector(x0)
    dim = x.shape[0]
    fix = fixed_point_set(map_spec, dim)
    fix.check_dim(dim)
    try:
        fix_points = sample_test_points(fix, GeneratorConfig.CASE_TEST_POINTS, seed=seed, dim=dim)
    except InfeasibleSetError as exc:
        raise InvalidParameterError(f"fixed-point set of {map_spec.kind} looks empty: {exc}") from exc

    pts = np.empty((h, dim))
    pts[0] = x
    for n in range(1, h):
        pts[n] = (1.0 - lam) * pts[n - 1] + lam * apply_map(map_spec, pts[n - 1])
    seq = SequencePrefix(pts, n0)

    # 裾の距離トレースの揺れは裾の直径（≤ 2 max ‖x_n − x_last‖）で抑えられる
    diameter = 2.0 * float(np.max(np.linalg.norm(seq.tail - pts[-1], axis=1)))
    convergent = is_averaged(map_spec) or lam < 1.0
    truth = [
        TruthTag.make(TagKind.FEJER_WRT, "FixT"),
        TruthTag.make(TagKind.OPIAL_WRT, "FixT"),
    ]
    if convergent:
        truth.append(TruthTag.make(TagKind.CONVERGENT))
    if isinstance(map_spec, PlaneRotation) and dim == 2 and lam < 1.0:
        truth.append(TruthTag.make(TagKind.STRONG_LIMIT, vectors=[np.asarray(map_spec.center)]))

    params: Dict[str, object] = {
        "map": map_spec.kind,
        "relaxation": lam,
        "horizon": h,
        "tail_start": n0,
        "seed": int(seed),
        "x0": [float(v) for v in x],
    }
    if isinstance(map_spec, PlaneRotation):
        params["theta"] = float(map_spec.theta)
    if isinstance(map_spec, AveragedReflection):
        params["alpha"] = float(map_spec.alpha)

    logger.debug("[generate][km] %s lambda=%.3g horizon=%d diameter=%.3e", map_spec.kind, lam, h, diameter)
    return GeneratedCase(
        name=f"km-{map_spec.kind}",
        seq=seq,
        sets={"FixT": fix},
        truth=truth,
        test_points={"FixT": fix_points},
        noise_floor=diameter if convergent else 0.0,
        params=params,
        description=f"KM iteration of {map_spec.kind} with relaxation {lam:g}",
    )
