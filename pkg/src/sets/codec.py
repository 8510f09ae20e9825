"""
src.sets.codec

凸集合記述子の JSON 変換と、CLI 用の直積略記のパーサ。

JSON 形式（1 変種 1 オブジェクト）は docs/SET_SCHEMA.md を参照。Box の ±∞ は null で書く。

直積略記:
  因子を "x" でつなぐ。因子は
    {a}     … 1 点
    [a,b]   … 閉区間
    R       … 実数直線
    R+      … 非負半直線
  例: "{0}x[-1,1]" → Box((0,-1), (0,1)),  "{0}xR" → Box((0,-inf), (0,inf))
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from src.errors import SetDescriptorError, UnknownNameError
from src.sets.descriptors import (
    VARIANTS,
    AffineSubspace,
    Ball,
    BallCapSubspace,
    Box,
    ConvexSet,
    GeneralIntersection,
    Halfspace,
    NonnegativeCone,
    Singleton,
    WholeSpace,
)

_FACTOR_POINT = re.compile(r"^\{\s*([^{}]+?)\s*\}$")
_FACTOR_INTERVAL = re.compile(r"^\[\s*([^,\[\]]+?)\s*,\s*([^,\[\]]+?)\s*\]$")


def _vec(v: np.ndarray) -> List[float]:
    return [float(t) for t in v]


def _bound(v: np.ndarray) -> List[Optional[float]]:
    return [None if not np.isfinite(t) else float(t) for t in v]


def set_to_json(set_: ConvexSet) -> Dict[str, Any]:
    """記述子を JSON 互換の dict に変換する。"""
    out: Dict[str, Any] = {"variant": set_.variant}
    if isinstance(set_, (WholeSpace, NonnegativeCone)):
        out["dim"] = set_.dim
    elif isinstance(set_, Singleton):
        out["point"] = _vec(set_.point)
    elif isinstance(set_, Ball):
        out["center"] = _vec(set_.center)
        out["radius"] = float(set_.radius)
    elif isinstance(set_, AffineSubspace):
        out["anchor"] = _vec(set_.anchor)
        out["basis"] = [_vec(b) for b in set_.basis]
        out["dim"] = set_.dim
    elif isinstance(set_, Halfspace):
        out["normal"] = _vec(set_.normal)
        out["offset"] = float(set_.offset)
    elif isinstance(set_, Box):
        out["lower"] = _bound(set_.lower)
        out["upper"] = _bound(set_.upper)
    elif isinstance(set_, BallCapSubspace):
        out["ball"] = set_to_json(set_.ball)
        out["subspace"] = set_to_json(set_.subspace)
    elif isinstance(set_, GeneralIntersection):
        out["sets"] = [set_to_json(s) for s in set_.sets]
    return out


def _opt_bounds(raw: List[Optional[float]], fill: float) -> np.ndarray:
    return np.array([fill if t is None else float(t) for t in raw], dtype=np.float64)


def set_from_json(obj: Dict[str, Any]) -> ConvexSet:
    """JSON 互換の dict から記述子を組み立てる。不正な形はすべて SetDescriptorError。"""
    if not isinstance(obj, dict) or "variant" not in obj:
        raise SetDescriptorError("set descriptor must be an object with a 'variant' field")
    name = obj["variant"]
    if name not in VARIANTS:
        raise UnknownNameError("set variant", str(name), VARIANTS.keys())
    try:
        if name == "WholeSpace":
            return WholeSpace(obj.get("dim"))
        if name == "NonnegativeCone":
            return NonnegativeCone(obj.get("dim"))
        if name == "Singleton":
            return Singleton(obj["point"])
        if name == "Ball":
            return Ball(obj["center"], obj["radius"])
        if name == "AffineSubspace":
            anchor = obj["anchor"]
            basis = obj.get("basis") or np.zeros((0, len(anchor)))
            return AffineSubspace(anchor, basis)
        if name == "Halfspace":
            return Halfspace(obj["normal"], obj["offset"])
        if name == "Box":
            return Box(_opt_bounds(obj["lower"], -np.inf), _opt_bounds(obj["upper"], np.inf))
        if name == "BallCapSubspace":
            ball = set_from_json(obj["ball"])
            sub = set_from_json(obj["subspace"])
            if not isinstance(ball, Ball) or not isinstance(sub, AffineSubspace):
                raise SetDescriptorError("BallCapSubspace needs a Ball and an AffineSubspace")
            return BallCapSubspace(ball, sub)
        if name == "GeneralIntersection":
            return GeneralIntersection(tuple(set_from_json(s) for s in obj["sets"]))
    except KeyError as exc:
        raise SetDescriptorError(f"{name}: missing field {exc.args[0]!r}") from exc
    raise SetDescriptorError(f"unhandled variant {name!r}")


def _number(tok: str) -> float:
    t = tok.strip().lower()
    if t in ("inf", "+inf"):
        return np.inf
    if t == "-inf":
        return -np.inf
    try:
        return float(t)
    except ValueError as exc:
        raise SetDescriptorError(f"not a number in set shorthand: {tok!r}") from exc


def parse_box_shorthand(text: str) -> Box:
    """'{0}x[-1,1]' のような直積略記を Box に変換する。"""
    s = text.strip()
    if not s:
        raise SetDescriptorError("empty set shorthand")
    factors = [f.strip() for f in re.split(r"\s*[x×]\s*(?![^\[]*\])", s)]
    lower: List[float] = []
    upper: List[float] = []
    for f in factors:
        if f == "R":
            lower.append(-np.inf)
            upper.append(np.inf)
            continue
        if f == "R+":
            lower.append(0.0)
            upper.append(np.inf)
            continue
        m = _FACTOR_POINT.match(f)
        if m:
            v = _number(m.group(1))
            lower.append(v)
            upper.append(v)
            continue
        m = _FACTOR_INTERVAL.match(f)
        if m:
            lower.append(_number(m.group(1)))
            upper.append(_number(m.group(2)))
            continue
        raise SetDescriptorError(f"cannot parse set shorthand factor {f!r} in {text!r}")
    return Box(lower, upper)


def load_set(spec: str) -> ConvexSet:
    """
    CLI の --set 引数を解釈する。

    - 既存ファイルのパスなら JSON 記述子として読む
    - '{' で始まり JSON として読めれば JSON 記述子
    - それ以外は直積略記
    """
    path = Path(spec)
    if path.suffix == ".json" or (len(spec) < 4096 and path.is_file()):
        if not path.is_file():
            raise SetDescriptorError(f"set file not found: {path}")
        try:
            return set_from_json(json.loads(path.read_text(encoding="utf-8")))
        except json.JSONDecodeError as exc:
            raise SetDescriptorError(f"{path}: invalid JSON ({exc.msg})") from exc
    stripped = spec.strip()
    if stripped.startswith("{") and '"variant"' in stripped:
        try:
            return set_from_json(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise SetDescriptorError(f"invalid JSON set descriptor ({exc.msg})") from exc
    return parse_box_shorthand(stripped)
