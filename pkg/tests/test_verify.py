"""ハーネス: 判定規則・シナリオ登録簿・実行器・報告。"""

import json

import numpy as np
import pytest

from src.errors import UnknownNameError
from src.verify.checks import conclusion, hypothesis, match_points
from src.verify.report import _jsonable, to_json, to_markdown, write_report
from src.verify.runner import ERROR, FAIL, PASS, REPRODUCED, run_scenario, run_suite, judge
from src.verify.scenarios import (
    RESULT_KEYS,
    Expectation,
    Scenario,
    all_scenarios,
    check_coverage,
    get_scenario,
    scenario,
    scenario_aliases,
    scenario_ids,
)

SMALL = ["trivial-constant", "robbins-siegmund", "hierarchy-strictness"]


class TestJudge:
    def test_pass_expectation(self):
        assert judge(Expectation.PASS, [conclusion("a", True), hypothesis("b", True)]) == PASS
        assert judge(Expectation.PASS, [conclusion("a", True), conclusion("b", False)]) == FAIL

    def test_counterexample_expectation(self):
        ce = Expectation.EXPECTED_COUNTEREXAMPLE
        assert judge(ce, [hypothesis("h", True), conclusion("c", False)]) == REPRODUCED
        assert judge(ce, [hypothesis("h", False), conclusion("c", False)]) == FAIL
        assert judge(ce, [hypothesis("h", True), conclusion("c", False), conclusion("d", True)]) == FAIL
        assert judge(ce, [hypothesis("h", True)]) == FAIL


class TestRegistry:
    def test_every_result_key_is_covered(self):
        check_coverage()
        assert {s.result_key for s in all_scenarios()} == set(RESULT_KEYS)

    def test_ids_are_sorted_and_include_counterexamples(self):
        ids = scenario_ids()
        assert ids == sorted(ids)
        assert "truth-anchored-drift" in ids
        assert "truth-km-plane-rotation-isometric" in ids
        ce = [s.id for s in all_scenarios() if s.expectation is Expectation.EXPECTED_COUNTEREXAMPLE]
        assert {"affine-hull-sharpness", "opial-lemma-cluster-outside", "projection-drift-without-fejer"} <= set(ce)

    def test_unknown_id(self):
        with pytest.raises(UnknownNameError) as info:
            get_scenario("opial-lema")
        assert info.value.suggestion == "opial-lemma"

    def test_numbered_aliases(self):
        assert get_scenario("Thm 3.13").id == "affine-projection-weak-convergence"
        assert get_scenario("thm  3.13") is get_scenario("Thm 3.13")
        assert get_scenario("Prop 3.14(i)").id == "subspace-projection-opial-iff-distance-converges"
        assert get_scenario("Fact 1.4").id == "robbins-siegmund"
        assert set(scenario_aliases().values()) <= set(scenario_ids())

    def test_unknown_alias_suggests_the_nearest_key(self):
        with pytest.raises(UnknownNameError) as info:
            get_scenario("Thm 3.31")
        assert info.value.suggestion is not None

    def test_duplicate_id_is_rejected(self):
        with pytest.raises(ValueError):
            scenario("trivial-constant", "trivial", "again")(lambda: [])


class TestRunner:
    def test_exception_becomes_error_status(self):
        boom = Scenario("boom", "trivial", "raises", lambda: [1 / 0])
        rep = run_scenario(boom)
        assert rep.status == ERROR
        assert not rep.ok
        assert "ZeroDivisionError" in rep.error
        assert rep.as_dict()["checks"] == []

    def test_empty_selection(self):
        suite, code = run_suite(only=[])
        assert suite.scenarios == [] and code == 0
        assert suite.ok

    def test_small_run_is_sorted_and_deduplicated(self):
        suite, code = run_suite(only=SMALL + ["trivial-constant"])
        assert [s.id for s in suite.scenarios] == sorted(SMALL)
        assert code == 0
        assert suite.counts[PASS] == 3

    def test_alias_selects_a_single_scenario(self):
        suite, code = run_suite(only=["Thm 3.13", "affine-projection-weak-convergence"])
        assert code == 0
        assert [s.id for s in suite.scenarios] == ["affine-projection-weak-convergence"]
        check = next(c for c in suite.scenarios[0].checks if c.name.startswith("anchored-drift: P_Y"))
        assert check.passed
        assert len(check.values["weak_proxy"]) == 1
        center = np.asarray(check.values["center"])
        e1 = np.zeros_like(center)
        e1[1] = 1.0
        np.testing.assert_allclose(center, e1, atol=1e-3)
        np.testing.assert_allclose(check.values["weak_proxy"][0], center, atol=1e-3)

    def test_unknown_ids_are_rejected(self):
        with pytest.raises(UnknownNameError):
            run_suite(only=["no-such-scenario"])

    def test_parallel_report_matches_serial(self):
        serial, _ = run_suite(only=SMALL)
        parallel, _ = run_suite(only=SMALL, max_workers=3)
        assert to_json(serial) == to_json(parallel)


class TestReport:
    def test_json_is_deterministic_and_complete(self, tmp_path):
        first, _ = run_suite(only=SMALL)
        second, _ = run_suite(only=SMALL)
        assert to_json(first) == to_json(second)
        path = write_report(first, tmp_path / "out" / "verify.json")
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["ok"] is True
        assert data["result_keys"] == list(RESULT_KEYS)
        assert {c["role"] for s in data["scenarios"] for c in s["checks"]} <= {"hypothesis", "conclusion"}

    def test_markdown_table(self, tmp_path):
        suite, _ = run_suite(only=["trivial-constant"])
        text = to_markdown(suite)
        assert text.startswith("| scenario | result key | expectation | status |")
        assert "| trivial-constant | trivial | Pass | pass |" in text
        assert "(ok=true)" in text
        assert write_report(suite, tmp_path / "table.md", markdown=True).read_text(encoding="utf-8") == text

    def test_jsonable(self):
        out = _jsonable({"a": np.float64(1.5), "b": np.arange(2), "c": float("inf"), "d": Expectation.PASS})
        assert out == {"a": 1.5, "b": [0, 1], "c": "inf", "d": "Pass"}


def test_match_points():
    assert match_points([np.array([1.0, 0.0]), np.array([0.0, 0.0])], [[0.0, 0.0], [1.0, 0.0]], 1e-9)
    assert not match_points([np.array([1.0, 0.0])], [[0.0, 0.0], [1.0, 0.0]], 1e-9)
