"""
src.config パッケージ

数値計算・検証ハーネス・CLI の設定モジュール群（numerics.py, harness.py）をまとめるパッケージです。
具体的な設定値は各モジュールの設定クラス（UPPER_CASE のクラス属性）で管理します。

注意:
- .env や外部設定ファイルは使用しません。既定値の変更は各クラスの定数を編集してください。
- ここにグローバル定数を増やさず、用途別の設定クラスに集約してください。
"""

from .harness import CLIConfig, GeneratorConfig, HarnessConfig, LoggingConfig, ViewerConfig
from .numerics import ClassifierConfig, ClusterConfig, NumericsConfig, SolverConfig

__all__ = [
    "CLIConfig",
    "ClassifierConfig",
    "ClusterConfig",
    "GeneratorConfig",
    "HarnessConfig",
    "LoggingConfig",
    "NumericsConfig",
    "SolverConfig",
    "ViewerConfig",
]
