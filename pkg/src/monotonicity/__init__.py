"""
src.monotonicity

単調性クラス（Fejér ⊂ Fejér* / 準 Fejér ⊂ Opial）の有限ホライズン分類器、
Robbins–Siegmund の検査、有限長性の診断、テスト点サンプラー。
"""

from .classify import ClassificationReport, ClassName, ClassVerdict, OpialReason, Witness, classify
from .finite_length import FiniteLengthReport, finite_length
from .robbins_siegmund import RobbinsSiegmundReport, robbins_siegmund_check, simulate_recursion
from .sampler import sample_test_points
from .summability import Status, summability_verdict

__all__ = [
    "ClassName",
    "ClassVerdict",
    "OpialReason",
    "ClassificationReport",
    "FiniteLengthReport",
    "RobbinsSiegmundReport",
    "Status",
    "Witness",
    "classify",
    "finite_length",
    "robbins_siegmund_check",
    "sample_test_points",
    "simulate_recursion",
    "summability_verdict",
]
