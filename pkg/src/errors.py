"""
src.errors

ツールキット共通の例外。標準の基底クラス（ValueError / RuntimeError / KeyError）も継承するので、
呼び出し側はどちらの粒度でも捕捉できます。
"""

from __future__ import annotations

from typing import Iterable, Optional

from rapidfuzz import process


class OpialToolkitError(Exception):
    """ツールキットが送出する例外の基底クラス。"""


class DimensionMismatchError(OpialToolkitError, ValueError):
    """ベクトル・集合・列の次元が一致しない。"""


class NonFiniteError(OpialToolkitError, ValueError):
    """NaN / Inf を含む入力。"""


class InvalidToleranceError(OpialToolkitError, ValueError):
    """許容誤差の指定が不正（負、または abs と rel が共に 0）。"""


class InvalidParameterError(OpialToolkitError, ValueError):
    """生成器・ソルバ等への引数が前提条件を満たさない。"""


class SequenceFormatError(OpialToolkitError, ValueError):
    """列ファイル（JSON Lines）の形式が不正。"""


class SetDescriptorError(OpialToolkitError, ValueError):
    """凸集合記述子が不変条件を満たさない、または JSON/略記が読めない。"""


class UnsupportedSetError(OpialToolkitError, ValueError):
    """その集合の種類ではこの操作が定義されていない。"""


class SampleOutsideSetError(OpialToolkitError, ValueError):
    """集合に属するはずのサンプル点が許容誤差を超えて外にある。"""


class InfeasibleSetError(OpialToolkitError, RuntimeError):
    """GeneralIntersection が空である疑い（Dykstra の実行可能性検査に失敗）。"""


class TailNotConvergedError(OpialToolkitError, RuntimeError):
    """距離トレースの裾が収束していない（極限値が測れない）。"""


class UnknownNameError(OpialToolkitError, KeyError):
    """未知の例名・シナリオ ID。近い候補があれば suggestion に入れる。"""

    def __init__(self, kind: str, name: str, choices: Iterable[str]):
        self.kind = kind
        self.name = name
        self.suggestion = suggest(name, choices)
        msg = f"unknown {kind}: {name!r}"
        if self.suggestion:
            msg += f" (did you mean {self.suggestion!r}?)"
        super().__init__(msg)

    def __str__(self) -> str:
        # KeyError は repr を返すので、通常のメッセージに揃える
        return str(self.args[0])


def suggest(name: str, choices: Iterable[str], score_cutoff: float = 60.0) -> Optional[str]:
    """rapidfuzz による「もしかして」候補。しきい値未満なら None。"""
    pool = list(choices)
    if not pool:
        return None
    hit = process.extractOne(name, pool, score_cutoff=score_cutoff)
    return hit[0] if hit else None
