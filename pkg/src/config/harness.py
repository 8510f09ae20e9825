"""
src.config.harness

生成器・検証ハーネス・CLI・ビューア・ロギングのコード内設定。
"""

from pathlib import Path


class GeneratorConfig:
    """例の生成器（make_example / km_iteration）の既定値。"""

    # 周期的構造の例の既定ホライズン
    PERIODIC_HORIZON = 64
    # 基底方向へ逃げる例（e_n 型）の既定ホライズン
    DRIFT_HORIZON = 256
    # 受け付ける最小ホライズン
    MIN_HORIZON = 8
    # テスト点の座標を j 番目で DECAY**j 倍する（ℓ² 的なテスト点を得るため）
    DRIFT_SAMPLE_DECAY = 0.5
    # 生成器が添付する認証済みテスト点の数
    CASE_TEST_POINTS = 12
    # 定数列の既定の点
    CONSTANT_POINT = (0.5, -0.25)


class HarnessConfig:
    """
    検証ハーネス（verify）の設定。

    - 代数的検査と代理（proxy）検査で許容誤差を分け、各検査の結果に記録します。
    """

    # 代数的検査の許容誤差
    ALGEBRAIC_TOL = 1e-9
    # 弱クラスタ代理・漸近中心の一致検査の許容誤差
    PROXY_TOL = 1e-3
    # 漸近中心の一致検査（弱極限との整合）の許容誤差
    CENTER_TOL = 1e-4
    # 予測公式（アフィン結合の極限）の許容誤差
    PREDICTOR_TOL = 1e-6
    # シナリオの並列実行数（1 なら逐次）
    MAX_WORKERS = 1
    # レポートの既定出力先
    REPORT_DIR = Path("reports")


class CLIConfig:
    """コマンドラインの既定値。全フラグの既定値はここに集約します。"""

    # 乱数（準乱数サンプラー）の既定シード
    DEFAULT_SEED = 7
    # classify の既定テスト点数
    DEFAULT_POINTS = 16
    # classify / accenter の既定許容誤差
    DEFAULT_TOL = 1e-9
    # accenter の既定目標ギャップ
    DEFAULT_SOLVER_TOL = 1e-10


class LoggingConfig:
    """logging.basicConfig に渡す設定。出力は標準エラー。"""

    LEVEL = "INFO"
    VERBOSE_LEVEL = "DEBUG"
    FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class ViewerConfig:
    """レポートビューア（webapp/app.py）の設定。"""

    HOST = "127.0.0.1"
    PORT = 5000
    DEBUG = False
