"""
src.verify.runner

シナリオの実行と判定。

- Pass 期待のシナリオ: 全検査が通れば "pass"、どれかが破れれば "fail"
- 反例期待のシナリオ: 仮説が全部通り結論が全部破れれば "reproduced"、それ以外は "fail"
- 例外が出たら "error"（スタックトレースを報告に残し、他のシナリオは続ける）

結果は常に ID 順に並べ、実行時間などの揺れる値は載せない（同じ入力なら同じ報告になる）。
"""

from __future__ import annotations

import logging
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from src.config.harness import HarnessConfig
from src.verify.checks import CheckResult, CheckRole
from src.verify.scenarios import RESULT_KEYS, Expectation, Scenario, all_scenarios, check_coverage, get_scenario

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
REPRODUCED = "reproduced"
ERROR = "error"


@dataclass(frozen=True)
class ScenarioReport:
    id: str
    result_key: str
    title: str
    expectation: Expectation
    status: str
    checks: List[CheckResult] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        expected = REPRODUCED if self.expectation is Expectation.EXPECTED_COUNTEREXAMPLE else PASS
        return self.status == expected

    def as_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "result_key": self.result_key,
            "title": self.title,
            "expectation": self.expectation.value,
            "status": self.status,
            "checks": [c.as_dict() for c in self.checks],
            "error": self.error,
        }


@dataclass(frozen=True)
class SuiteReport:
    scenarios: List[ScenarioReport]

    @property
    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, REPRODUCED: 0, ERROR: 0}
        for s in self.scenarios:
            out[s.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.scenarios)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "counts": self.counts,
            "result_keys": list(RESULT_KEYS),
            "scenarios": [s.as_dict() for s in self.scenarios],
        }


def judge(expectation: Expectation, checks: List[CheckResult]) -> str:
    """検査結果の並びからシナリオの状態を決める。"""
    if expectation is Expectation.PASS:
        return PASS if all(c.passed for c in checks) else FAIL
    hyps = [c for c in checks if c.role is CheckRole.HYPOTHESIS]
    concl = [c for c in checks if c.role is CheckRole.CONCLUSION]
    if concl and all(c.passed for c in hyps) and not any(c.passed for c in concl):
        return REPRODUCED
    return FAIL


def run_scenario(s: Scenario) -> ScenarioReport:
    try:
        checks = list(s.run())
    except Exception as exc:
        tb = "".join(traceback.format_exception(type(exc), exc, exc.__traceback__))
        logger.error("[verify][error] %s → %s: %s", s.id, exc.__class__.__name__, exc)
        return ScenarioReport(s.id, s.result_key, s.title, s.expectation, ERROR, [], tb)
    status = judge(s.expectation, checks)
    log = logger.info if status in (PASS, REPRODUCED) else logger.warning
    log("[verify] %s %s (%d checks)", s.id, status, len(checks))
    return ScenarioReport(s.id, s.result_key, s.title, s.expectation, status, checks)


def run_suite(
    only: Optional[Iterable[str]] = None,
    max_workers: int = HarnessConfig.MAX_WORKERS,
) -> Tuple[SuiteReport, int]:
    """
    シナリオ群を実行して (報告, 終了コード) を返す。

    - only: 実行する ID の並び（未知の ID は UnknownNameError）。None なら全件、空なら 0 件
    - 終了コードは期待どおりでないシナリオが 1 つでもあれば 1
    """
    check_coverage()
    if only is None:
        chosen = all_scenarios()
    else:
        chosen = sorted({get_scenario(i).id: get_scenario(i) for i in only}.values(), key=lambda s: s.id)
    if not chosen:
        return SuiteReport([]), 0

    if max_workers <= 1:
        reports = [run_scenario(s) for s in chosen]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            reports = list(pool.map(run_scenario, chosen))
    reports.sort(key=lambda r: r.id)
    suite = SuiteReport(reports)
    logger.info("[verify][summary] %s", " ".join(f"{k}={v}" for k, v in suite.counts.items()))
    return suite, 0 if suite.ok else 1
