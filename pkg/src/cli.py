"""
src.cli

パイプライン用のコマンドライン入口。

  python main.py generate --example sign-flip-plane --out data/flip.jsonl
  python main.py classify --seq data/flip.jsonl --set '{0}x[-1,1]'
  python main.py project  --seq data/flip.jsonl --set '{0}xR' --csv trace.csv
  python main.py accenter --seq data/flip.jsonl --set '{0}xR'
  python main.py verify   --report reports/verify.json

- 既定値はすべて src/config の設定クラスから取る（.env は使わない）
- 結果は --out（なければ標準出力）に JSON / JSON Lines で書く。ログは標準エラーへ
- 終了コード: 0 = 成功、1 = 検査の失敗（verify）、2 = 使い方・入力の誤り
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from src.accenter.solver import asymptotic_center, window_sensitivity
from src.config.harness import CLIConfig, HarnessConfig, LoggingConfig
from src.config.numerics import ClassifierConfig
from src.errors import OpialToolkitError
from src.generators.examples import example_names, make_example
from src.hilbert.algebra import distance_matrix
from src.hilbert.io import read_sequence, sequence_lines, write_sequence
from src.models import Tolerance
from src.monotonicity.classify import classify
from src.monotonicity.sampler import sample_test_points
from src.sets.codec import load_set
from src.sets.projection import project_trace, projection_constant
from src.verify.report import to_json, to_markdown, write_report
from src.verify.runner import run_suite
from src.verify.scenarios import scenario_ids

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


# --- 出力ヘルパ ---
def _emit_json(obj: Dict[str, Any], out: Optional[Path]) -> None:
    text = json.dumps(obj, ensure_ascii=False, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("[cli] wrote %s", out)


def _write_csv(path: Path, header: List[str], rows: Sequence[Sequence[Any]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)
    logger.info("[cli] wrote %s (%d rows)", path, len(rows))


def _tolerance(value: float) -> Tolerance:
    return Tolerance(abs=value, rel=value)


def _load_inputs(args: argparse.Namespace):
    seq = read_sequence(args.seq)
    if args.tail is not None:
        seq = seq.with_tail(args.tail)
    set_ = load_set(args.set)
    set_.check_dim(seq.dim)
    return seq, set_


# --- サブコマンド ---
def _cmd_generate(args: argparse.Namespace) -> int:
    case = make_example(args.example, horizon=args.horizon, tail_start=args.tail, seed=args.seed)
    if args.out is None:
        sys.stdout.write("\n".join(sequence_lines(case.seq)) + "\n")
        logger.info("[cli][generate] %s to stdout (no sidecar without --out)", case.name)
        return EXIT_OK
    write_sequence(case.seq, args.out)
    sidecar = args.out.with_name(f"{args.out.stem}.truth.json")
    sidecar.write_text(json.dumps(case.sidecar(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    logger.info("[cli][generate] %s → %s (+ %s)", case.name, args.out, sidecar.name)
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace) -> int:
    seq, set_ = _load_inputs(args)
    points = sample_test_points(set_, args.points, seed=args.seed, dim=seq.dim, decay=args.decay)
    limit_tol = None if args.limit_tol is None else _tolerance(args.limit_tol)
    report = classify(seq, points, _tolerance(args.tol), limit_tol=limit_tol, max_workers=args.workers)
    if args.csv is not None:
        dist = distance_matrix(seq, points)
        header = ["n"] + [f"d{k}" for k in range(points.shape[0])]
        _write_csv(args.csv, header, [[n, *dist[:, n].tolist()] for n in range(seq.length)])
    _emit_json(report.as_dict(), args.out)
    return EXIT_OK


def _cmd_project(args: argparse.Namespace) -> int:
    seq, set_ = _load_inputs(args)
    projected, dist = project_trace(seq, set_)
    if args.csv is not None:
        header = ["n", "distance"] + [f"p{i}" for i in range(seq.dim)]
        _write_csv(args.csv, header, [[n, float(dist[n]), *projected.points[n].tolist()] for n in range(seq.length)])
    if args.out is not None:
        write_sequence(projected, args.out)
        logger.info("[cli][project] projected sequence → %s", args.out)
        return EXIT_OK
    _emit_json({
        "distances": [float(v) for v in dist],
        "projection_constant": projection_constant(seq, set_),
        "projected": [[float(v) for v in p] for p in projected.points],
    }, None)
    return EXIT_OK


def _cmd_accenter(args: argparse.Namespace) -> int:
    seq, set_ = _load_inputs(args)
    result = asymptotic_center(seq, set_, solver_tol=args.tol)
    out = result.as_dict()
    if args.window:
        out["window_sensitivity"] = window_sensitivity(seq, set_, solver_tol=args.tol)
    _emit_json(out, args.out)
    return EXIT_OK


def _split_ids(raw: Optional[List[str]]) -> Optional[List[str]]:
    if raw is None:
        return None
    return [i.strip() for chunk in raw for i in chunk.split(",") if i.strip()]


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        sys.stdout.write("\n".join(scenario_ids()) + "\n")
        return EXIT_OK
    suite, _ = run_suite(_split_ids(args.only), max_workers=args.workers)
    if args.report is not None:
        write_report(suite, args.report)
        logger.info("[cli][verify] report → %s", args.report)
    text = to_markdown(suite) if args.markdown else to_json(suite) + "\n"
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if suite.ok else EXIT_CHECK_FAILED


# --- パーサ ---
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="エラーを JSON で標準エラーへ出す")
    common.add_argument("--verbose", action="store_true", help="ログを DEBUG まで出す")
    common.add_argument("--out", type=Path, default=None, help="出力先（既定: 標準出力）")

    io = argparse.ArgumentParser(add_help=False)
    io.add_argument("--seq", type=Path, required=True, help="列ファイル（JSON Lines）")
    io.add_argument("--set", required=True, help="集合記述子（JSON ファイル / JSON 文字列 / 直積略記 '{0}x[-1,1]'）")
    io.add_argument("--tail", type=int, default=None, help="裾の開始位置（既定: ファイルのヘッダ）")

    p = argparse.ArgumentParser(prog="opial", description="Opial 列の数値検証ツールキット")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="例の列を生成する")
    g.add_argument("--example", required=True, help=f"例の名前（{', '.join(example_names())}）。Ex2_8 などの番号でも指定可")
    g.add_argument("--horizon", type=int, default=None, help="項数（既定: 周期型 64 / 基底方向へ逃げる型 256）")
    g.add_argument("--tail", type=int, default=None, help="裾の開始位置（既定: horizon // 2）")
    g.add_argument("--seed", type=int, default=CLIConfig.DEFAULT_SEED,
                   help=f"テスト点サンプラーのシード（既定: {CLIConfig.DEFAULT_SEED}）")
    g.set_defaults(func=_cmd_generate)

    c = sub.add_parser("classify", parents=[common, io], help="単調性クラスを判定する")
    c.add_argument("--points", type=int, default=CLIConfig.DEFAULT_POINTS,
                   help=f"集合からサンプルするテスト点の数（既定: {CLIConfig.DEFAULT_POINTS}）")
    c.add_argument("--seed", type=int, default=CLIConfig.DEFAULT_SEED, help=f"サンプラーのシード（既定: {CLIConfig.DEFAULT_SEED}）")
    c.add_argument("--decay", type=float, default=None, help="サンプル座標の幾何減衰率（既定: なし）")
    c.add_argument("--tol", type=float, default=CLIConfig.DEFAULT_TOL, help=f"abs/rel 許容誤差（既定: {CLIConfig.DEFAULT_TOL}）")
    c.add_argument("--limit-tol", type=float, default=None, help="Opial の極限判定の許容誤差（既定: --tol と同じ）")
    c.add_argument("--workers", type=int, default=ClassifierConfig.MAX_WORKERS,
                   help=f"テスト点ごとの並列数（既定: {ClassifierConfig.MAX_WORKERS}）")
    c.add_argument("--csv", type=Path, default=None, help="距離トレースを CSV で書き出す")
    c.set_defaults(func=_cmd_classify)

    pr = sub.add_parser("project", parents=[common, io], help="射影列と距離トレースを出す")
    pr.add_argument("--csv", type=Path, default=None, help="距離と射影を CSV で書き出す")
    pr.set_defaults(func=_cmd_project)

    a = sub.add_parser("accenter", parents=[common, io], help="漸近中心を計算する")
    a.add_argument("--tol", type=float, default=CLIConfig.DEFAULT_SOLVER_TOL,
                   help=f"証明書ギャップの目標（既定: {CLIConfig.DEFAULT_SOLVER_TOL}）")
    a.add_argument("--window", action="store_true", help="裾の窓を変えたときの中心のずれも報告する")
    a.set_defaults(func=_cmd_accenter)

    v = sub.add_parser("verify", parents=[common], help="定理ハーネスを実行する")
    v.add_argument("--only", action="append", default=None, help="実行するシナリオ ID または番号の別名（例: 'Thm 3.13'）。カンマ区切り・複数指定可")
    v.add_argument("--workers", type=int, default=HarnessConfig.MAX_WORKERS,
                   help=f"シナリオの並列数（既定: {HarnessConfig.MAX_WORKERS}）")
    v.add_argument("--report", type=Path, default=None, help="JSON 報告の保存先")
    v.add_argument("--markdown", action="store_true", help="対応表（Markdown）を出力する")
    v.add_argument("--list", action="store_true", help="シナリオ ID の一覧だけを出す")
    v.set_defaults(func=_cmd_verify)
    return p


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=LoggingConfig.VERBOSE_LEVEL if verbose else LoggingConfig.LEVEL,
        format=LoggingConfig.FORMAT,
        stream=sys.stderr,
    )


def _report_error(exc: BaseException, as_json: bool, stream: TextIO) -> None:
    if as_json:
        stream.write(json.dumps({"error": str(exc), "type": type(exc).__name__}, ensure_ascii=False) + "\n")
    else:
        stream.write(f"[cli][error] {type(exc).__name__}: {exc}\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help は 0、引数エラーは argparse が 2 を返す
        return int(exc.code or 0)

    _configure_logging(args.verbose)
    try:
        return int(args.func(args))
    except (OpialToolkitError, OSError, json.JSONDecodeError) as exc:
        logger.debug("[cli] %s failed", args.command, exc_info=True)
        _report_error(exc, args.json, sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
