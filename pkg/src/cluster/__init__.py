"""
src.cluster

強クラスタ点・弱クラスタ点（代理）の抽出と、弱クラスタ点の差の直交性検査。
射影列 (P_C x_n) の強クラスタ点は strong_clusters を射影列に適用して得る。
"""

from .extract import ClusterSet, StrongCluster, extract_clusters, strong_clusters, weak_clusters_proxy
from .orthogonality import OrthogonalityReport, orthogonality_check

__all__ = [
    "ClusterSet",
    "OrthogonalityReport",
    "StrongCluster",
    "extract_clusters",
    "orthogonality_check",
    "strong_clusters",
    "weak_clusters_proxy",
]
