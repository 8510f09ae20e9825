"""
src.verify.checks

シナリオが組み立てる個々の検査（CheckResult）と、その計算に使う小さなヘルパ。
検査ごとに許容誤差の種類（algebraic / proxy / center / predictor）を記録する。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.errors import InvalidParameterError
from src.generators.cases import GeneratedCase
from src.models import SequencePrefix, Tolerance
from src.monotonicity.classify import ClassificationReport, ClassName, classify
from src.monotonicity.summability import Status


class CheckRole(str, Enum):
    HYPOTHESIS = "hypothesis"
    CONCLUSION = "conclusion"


@dataclass(frozen=True)
class CheckResult:
    name: str
    role: CheckRole
    passed: bool
    tol: Optional[float] = None
    tol_kind: str = "algebraic"
    values: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "role": self.role.value,
            "pass": self.passed,
            "tol": self.tol,
            "tol_kind": self.tol_kind,
            "values": self.values,
        }


def hypothesis(name: str, passed: bool, tol: Optional[float] = None, tol_kind: str = "algebraic", **values: Any) -> CheckResult:
    return CheckResult(name, CheckRole.HYPOTHESIS, bool(passed), tol, tol_kind, values)


def conclusion(name: str, passed: bool, tol: Optional[float] = None, tol_kind: str = "algebraic", **values: Any) -> CheckResult:
    return CheckResult(name, CheckRole.CONCLUSION, bool(passed), tol, tol_kind, values)


def as_role(result: CheckResult, role: CheckRole) -> CheckResult:
    return CheckResult(result.name, role, result.passed, result.tol, result.tol_kind, result.values)


# --- 計算ヘルパ ---
def classify_case(
    case: GeneratedCase,
    set_name: Optional[str] = None,
    points: Optional[Sequence[Sequence[float]] | np.ndarray] = None,
    seq: Optional[SequencePrefix] = None,
) -> ClassificationReport:
    """ケースの列（または差し替えた列）を、集合の認証済みテスト点か明示した点で分類する。"""
    if points is None:
        if set_name is None:
            raise InvalidParameterError("either set_name or points is required")
        pts = case.test_points[set_name]
    else:
        pts = np.asarray(points, dtype=np.float64)
    return classify(seq or case.seq, pts, Tolerance(), limit_tol=case.limit_tolerance())


def status_of(report: ClassificationReport, name: ClassName) -> str:
    return report.status(name).value


def opial_holds(report: ClassificationReport) -> bool:
    return report.status(ClassName.OPIAL) is not Status.FAILS


def tail_spread(seq: SequencePrefix) -> float:
    """裾の点と最後の点の距離の最大値（裾が 1 点に集まっているかの目安）。"""
    return float(np.max(np.linalg.norm(seq.tail - seq.points[-1], axis=1)))


def match_points(found: Sequence[np.ndarray], expected: Sequence[Sequence[float]], tol: float) -> bool:
    """2 つの点集合が個数も含めて tol 以内で一致するか（貪欲な対応づけ）。"""
    if len(found) != len(expected):
        return False
    pool: List[np.ndarray] = [np.asarray(p, dtype=np.float64) for p in found]
    for e in expected:
        ev = np.asarray(e, dtype=np.float64)
        hit = next((i for i, p in enumerate(pool) if np.linalg.norm(p - ev) <= tol), None)
        if hit is None:
            return False
        pool.pop(hit)
    return True


def vec(v: Any) -> List[float]:
    return [float(t) for t in np.asarray(v, dtype=np.float64).reshape(-1)]

