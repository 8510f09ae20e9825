"""
src.sets

閉凸集合の記述子・射影・距離・集合演算（アフィン包、差の張る空間）と JSON 変換。
"""

from .codec import load_set, parse_box_shorthand, set_from_json, set_to_json
from .descriptors import (
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
)
from .geometry import affine_hull, difference_span_basis
from .projection import (
    ProjectionResult,
    contains,
    distance,
    project,
    project_many,
    project_trace,
    projection_constant,
)

__all__ = [
    "AffineSubspace",
    "Ball",
    "BallCapSubspace",
    "Box",
    "ConvexSet",
    "GeneralIntersection",
    "Halfspace",
    "NonnegativeCone",
    "ProjectionResult",
    "Singleton",
    "WholeSpace",
    "affine_hull",
    "contains",
    "difference_span_basis",
    "distance",
    "load_set",
    "parse_box_shorthand",
    "project",
    "project_many",
    "project_trace",
    "projection_constant",
    "set_from_json",
    "set_to_json",
]
