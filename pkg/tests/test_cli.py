"""CLI（main）の入出力と終了コード。"""

import csv
import json

import pytest

from src.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main
from src.hilbert.io import read_sequence
from src.models import Tolerance
from src.monotonicity.classify import classify
from src.monotonicity.sampler import sample_test_points
from src.sets.codec import load_set

BOX = "{0}x[-1,1]"
LINE = "{0}xR"


@pytest.fixture
def flip_file(tmp_path):
    path = tmp_path / "flip.jsonl"
    assert main(["generate", "--example", "sign-flip-plane", "--out", str(path)]) == EXIT_OK
    return path


def _last_json_line(text):
    return json.loads([line for line in text.splitlines() if line.strip()][-1])


def test_generate_writes_sequence_and_sidecar(flip_file):
    seq = read_sequence(flip_file)
    assert (seq.length, seq.dim, seq.tail_start) == (64, 2, 32)
    side = json.loads(flip_file.with_name("flip.truth.json").read_text(encoding="utf-8"))
    assert side["name"] == "sign-flip-plane"
    assert side["sets"]["C"] == {"variant": "Box", "lower": [0.0, -1.0], "upper": [0.0, 1.0]}


def test_generate_to_stdout(capsys):
    assert main(["generate", "--example", "constant", "--horizon", "8"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert json.loads(lines[0]) == {"dim": 2, "tail_start": 4}
    assert len(lines) == 9


def test_classify_matches_the_library(flip_file, capsys):
    assert main(["classify", "--seq", str(flip_file), "--set", BOX]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    statuses = {v["class"]: v["status"] for v in out["verdicts"]}
    assert statuses["Opial"] == "Holds"
    assert statuses["Fejer"] == "Holds"

    seq = read_sequence(flip_file)
    points = sample_test_points(load_set(BOX), 16, seed=7, dim=2)
    expected = classify(seq, points, Tolerance(abs=1e-9, rel=1e-9))
    assert out == json.loads(json.dumps(expected.as_dict(), ensure_ascii=False))


def test_classify_against_the_whole_plane_fails(flip_file, capsys):
    assert main(["classify", "--seq", str(flip_file), "--set", "RxR", "--points", "4", "--out",
                 str(flip_file.with_name("report.json"))]) == EXIT_OK
    out = json.loads(flip_file.with_name("report.json").read_text(encoding="utf-8"))
    opial = next(v for v in out["verdicts"] if v["class"] == "Opial")
    assert opial["status"] == "Fails"
    assert opial["witness"] is not None


def test_classify_csv(flip_file, tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    assert main(["classify", "--seq", str(flip_file), "--set", BOX, "--points", "3", "--csv", str(trace)]) == EXIT_OK
    with trace.open(encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["n", "d0", "d1", "d2"]
    assert len(rows) == 65


def test_project(flip_file, tmp_path, capsys):
    trace = tmp_path / "proj.csv"
    assert main(["project", "--seq", str(flip_file), "--set", LINE, "--csv", str(trace)]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["distances"] == [1.0] * 64
    assert out["projection_constant"]["constant"] is True
    with trace.open(encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["n", "distance", "p0", "p1"]
    assert [float(v) for v in rows[1][1:]] == [1.0, 0.0, 0.0]


def test_project_to_file(flip_file, tmp_path):
    dest = tmp_path / "projected.jsonl"
    assert main(["project", "--seq", str(flip_file), "--set", LINE, "--out", str(dest)]) == EXIT_OK
    projected = read_sequence(dest)
    assert projected.tail_start == 32
    assert not projected.points.any()


def test_accenter(flip_file, capsys):
    assert main(["accenter", "--seq", str(flip_file), "--set", LINE, "--window"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["center"] == [0.0, 0.0]
    assert out["objective"] == pytest.approx(1.0)
    assert out["converged"] is True
    assert out["window_sensitivity"]["shift"] == pytest.approx(0.0, abs=1e-9)


def test_tail_override(flip_file, capsys):
    assert main(["accenter", "--seq", str(flip_file), "--set", LINE, "--tail", "60"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["tail_window"] == {"tail_start": 60, "tail_length": 4}


def test_verify_markdown(capsys):
    code = main(["verify", "--only", "trivial-constant,robbins-siegmund", "--markdown"])
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "| robbins-siegmund | robbins-siegmund | Pass | pass |" in text
    assert "| trivial-constant | trivial | Pass | pass |" in text


def test_verify_report_file(tmp_path, capsys):
    report = tmp_path / "reports" / "verify.json"
    assert main(["verify", "--only", "trivial-constant", "--report", str(report)]) == EXIT_OK
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["ok"] is True
    assert json.loads(capsys.readouterr().out) == data


def test_verify_list(capsys):
    assert main(["verify", "--list"]) == EXIT_OK
    ids = capsys.readouterr().out.split()
    assert "trivial-constant" in ids and ids == sorted(ids)


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EXIT_OK
    assert "generate" in capsys.readouterr().out


def test_missing_argument_is_a_usage_error(capsys):
    assert main(["classify", "--set", BOX]) == EXIT_USAGE


def test_unknown_example_reports_json(capsys):
    assert main(["generate", "--example", "sign-flip-plain", "--json"]) == EXIT_USAGE
    err = _last_json_line(capsys.readouterr().err)
    assert err["type"] == "UnknownNameError"
    assert "sign-flip-plane" in err["error"]


def test_unknown_scenario(capsys):
    assert main(["verify", "--only", "no-such-scenario"]) == EXIT_USAGE
    assert "[cli][error] UnknownNameError" in capsys.readouterr().err


def test_missing_sequence_file(tmp_path, capsys):
    code = main(["classify", "--seq", str(tmp_path / "nope.jsonl"), "--set", BOX, "--json"])
    assert code == EXIT_USAGE
    assert _last_json_line(capsys.readouterr().err)["type"] == "SequenceFormatError"


def test_bad_set_shorthand(flip_file, capsys):
    assert main(["project", "--seq", str(flip_file), "--set", "{0}x[1]"]) == EXIT_USAGE


def test_exit_code_constants():
    assert (EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE) == (0, 1, 2)


def test_numbered_example_names(tmp_path, capsys):
    path = tmp_path / "ex2_8.jsonl"
    assert main(["generate", "--example", "Ex2_8", "--horizon", "32", "--out", str(path)]) == EXIT_OK
    side = json.loads(path.with_name("ex2_8.truth.json").read_text(encoding="utf-8"))
    assert side["name"] == "sign-flip-plane"

    assert main(["classify", "--seq", str(path), "--set", BOX]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert {v["class"]: v["status"] for v in out["verdicts"]}["Opial"] == "Holds"

    assert main(["accenter", "--seq", str(path), "--set", LINE]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["center"] == pytest.approx([0.0, 0.0], abs=1e-6)


def test_numbered_example_dimension(capsys):
    assert main(["generate", "--example", "Ex3_12", "--horizon", "10"]) == EXIT_OK
    header = json.loads(capsys.readouterr().out.splitlines()[0])
    assert header == {"dim": 12, "tail_start": 5}


def test_verify_by_numbered_key(capsys):
    assert main(["verify", "--only", "Thm 3.13"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert [s["id"] for s in data["scenarios"]] == ["affine-projection-weak-convergence"]
    assert data["scenarios"][0]["status"] == "pass"
