"""
src.hilbert

有限次元に切り詰めた ℓ² 上のベクトル演算と、列の裾統計・列ファイル入出力。
"""

from .algebra import as_vector, distance_matrix, distance_trace, inner, norm
from .io import read_sequence, write_sequence
from .tail import tail_limit_estimate

__all__ = [
    "as_vector",
    "distance_matrix",
    "distance_trace",
    "inner",
    "norm",
    "read_sequence",
    "tail_limit_estimate",
    "write_sequence",
]
