"""
Opial 列ツールキット。

サブパッケージ: hilbert, sets, monotonicity, cluster, accenter, generators, verify（入口は src.cli）。
"""
