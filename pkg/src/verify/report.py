"""
src.verify.report

ハーネス報告の書き出し（JSON と Markdown の対応表）。
"""

from __future__ import annotations

import json
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

from src.verify.runner import SuiteReport


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, Enum):
        return obj.value
    if hasattr(obj, "as_dict"):
        return _jsonable(obj.as_dict())
    if isinstance(obj, float) and not np.isfinite(obj):
        return str(obj)
    return obj


def to_json(report: SuiteReport) -> str:
    return json.dumps(_jsonable(report.as_dict()), ensure_ascii=False, sort_keys=True, indent=2)


def to_markdown(report: SuiteReport) -> str:
    lines = [
        "| scenario | result key | expectation | status |",
        "|---|---|---|---|",
    ]
    for s in report.scenarios:
        lines.append(f"| {s.id} | {s.result_key} | {s.expectation.value} | {s.status} |")
    counts = ", ".join(f"{k}: {v}" for k, v in report.counts.items())
    lines += ["", f"{counts} (ok={str(report.ok).lower()})", ""]
    return "\n".join(lines)


def write_report(report: SuiteReport, path: Path, markdown: bool = False) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_markdown(report) if markdown else to_json(report) + "\n", encoding="utf-8")
    return path
