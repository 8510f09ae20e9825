"""
src.accenter

漸近中心（裾の目的関数 max‖x − u_n‖² の C 上の最小点）のソルバ、低次元の総当たりオラクル、
部分列に対する中心の不変性検査。
"""

from .bruteforce import GridSpec, asymptotic_center_bruteforce
from .invariance import InvarianceReport, subsequence_center_invariance
from .solver import AsymptoticCenterResult, asymptotic_center, tail_objective, window_sensitivity

__all__ = [
    "AsymptoticCenterResult",
    "GridSpec",
    "InvarianceReport",
    "asymptotic_center",
    "asymptotic_center_bruteforce",
    "subsequence_center_invariance",
    "tail_objective",
    "window_sensitivity",
]
