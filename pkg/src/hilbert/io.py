"""
src.hilbert.io

列ファイル（JSON Lines）の読み書き。

フォーマット:
  1 行目: {"dim": d, "tail_start": N0}
  以降:   {"n": i, "x": [..d 個の実数..]}  （n は狭義単調増加）
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Any, Dict, Iterable, List, Union

import numpy as np

from src.errors import DimensionMismatchError, NonFiniteError, SequenceFormatError
from src.models import SequencePrefix

PathOrStream = Union[str, Path, IO[str]]


def sequence_lines(seq: SequencePrefix) -> List[str]:
    """列を JSON Lines の行（改行なし）に変換する。"""
    lines = [json.dumps({"dim": seq.dim, "tail_start": seq.tail_start}, ensure_ascii=False)]
    for i, x in enumerate(seq.points):
        # repr 相当の最短表現で書くので、読み戻しは bit 単位で一致する
        lines.append(json.dumps({"n": i, "x": [float(v) for v in x]}, ensure_ascii=False))
    return lines


def write_sequence(seq: SequencePrefix, dest: PathOrStream) -> None:
    text = "\n".join(sequence_lines(seq)) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)  # type: ignore[union-attr]
        return
    path = Path(dest)  # type: ignore[arg-type]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def parse_sequence(lines: Iterable[str]) -> SequencePrefix:
    """JSON Lines の行から列を組み立てる。n の非単調・次元不一致・非有限値は拒否する。"""
    header: Dict[str, Any] | None = None
    rows: List[List[float]] = []
    last_n = -1
    for lineno, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s:
            continue
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise SequenceFormatError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
        if not isinstance(obj, dict):
            raise SequenceFormatError(f"line {lineno}: expected a JSON object")
        if header is None:
            if "dim" not in obj:
                raise SequenceFormatError("first line must be a header with 'dim' and 'tail_start'")
            header = obj
            continue
        if "n" not in obj or "x" not in obj:
            raise SequenceFormatError(f"line {lineno}: point lines need 'n' and 'x'")
        n = obj["n"]
        if not isinstance(n, int) or n <= last_n:
            raise SequenceFormatError(f"line {lineno}: n must increase strictly (got {n!r} after {last_n})")
        last_n = n
        x = obj["x"]
        if not isinstance(x, list) or len(x) != int(header["dim"]):
            raise DimensionMismatchError(f"line {lineno}: expected {header['dim']} coordinates")
        rows.append([float(v) for v in x])

    if header is None:
        raise SequenceFormatError("empty sequence file")
    if not rows:
        raise SequenceFormatError("sequence file has no points")
    pts = np.asarray(rows, dtype=np.float64)
    if not np.all(np.isfinite(pts)):
        raise NonFiniteError("sequence file contains non-finite coordinates")
    return SequencePrefix(pts, int(header.get("tail_start", 0)))


def read_sequence(src: PathOrStream) -> SequencePrefix:
    if hasattr(src, "read"):
        return parse_sequence(src.read().splitlines())  # type: ignore[union-attr]
    path = Path(src)  # type: ignore[arg-type]
    if not path.exists():
        raise SequenceFormatError(f"sequence file not found: {path}")
    return parse_sequence(path.read_text(encoding="utf-8").splitlines())
