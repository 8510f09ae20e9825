"""
src.generators

正解タグつきの例の列（make_example）、KM 反復（km_iteration）、アフィン結合の距離極限の予測。
"""

from .cases import GeneratedCase
from .examples import ExampleName, default_horizon, example_aliases, example_names, make_example, resolve_example
from .km import (
    AveragedReflection,
    IdentityMap,
    NonexpansiveMapSpec,
    PlaneRotation,
    ProjectionComposition,
    apply_map,
    fixed_point_set,
    km_iteration,
)
from .predictor import PredictionReport, opial_limit_predictor
from .truth import TagKind, TruthTag

__all__ = [
    "AveragedReflection",
    "ExampleName",
    "GeneratedCase",
    "IdentityMap",
    "NonexpansiveMapSpec",
    "PlaneRotation",
    "PredictionReport",
    "ProjectionComposition",
    "TagKind",
    "TruthTag",
    "apply_map",
    "default_horizon",
    "example_aliases",
    "example_names",
    "fixed_point_set",
    "km_iteration",
    "make_example",
    "opial_limit_predictor",
    "resolve_example",
]
