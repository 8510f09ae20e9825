"""
src.verify

定理ハーネス: 各結果キーを引用するシナリオを実行し、仮説と結論の検査を報告する。
"""

from .checks import CheckResult, CheckRole, conclusion, hypothesis
from .report import to_json, to_markdown, write_report
from .runner import ScenarioReport, SuiteReport, judge, run_scenario, run_suite
from .scenarios import RESULT_KEYS, Expectation, Scenario, all_scenarios, get_scenario, scenario_aliases, scenario_ids
from .truth import check_case, check_tag

__all__ = [
    "CheckResult",
    "CheckRole",
    "Expectation",
    "RESULT_KEYS",
    "Scenario",
    "ScenarioReport",
    "SuiteReport",
    "all_scenarios",
    "check_case",
    "check_tag",
    "conclusion",
    "get_scenario",
    "hypothesis",
    "judge",
    "run_scenario",
    "run_suite",
    "scenario_aliases",
    "scenario_ids",
    "to_json",
    "to_markdown",
    "write_report",
]
