class NumericsConfig:
    """
    ベクトル演算・射影・極限推定に共通する数値設定クラス。

    - .env は使用せず、本クラスのクラス属性（定数）で全て管理します。
    - 参照箇所:
      - `src/models.py`（Tolerance の既定値）
      - `src/hilbert/tail.py`（裾の極限推定）
      - `src/sets/projection.py`（所属判定・Dykstra 反復）

    設定の考え方:
    - 倍精度の閉形式は ~1e-12 まで正確なので、代数的恒等式は 1e-9 で判定します。
    - 反復法（Dykstra）は打ち切り誤差を結果に記録し、exact=False として区別します。
    """

    # --- 既定の許容誤差 ---
    # 代数的恒等式の絶対許容誤差
    DEFAULT_ABS_TOL = 1e-9
    # 代数的恒等式の相対許容誤差
    DEFAULT_REL_TOL = 1e-9
    # 集合への所属判定（distance ≤ tol）
    MEMBERSHIP_TOL = 1e-8
    # 正規直交基底の検査に使う許容誤差
    ORTHONORMAL_TOL = 1e-10

    # --- 裾の極限推定 ---
    # これを超える値（絶対値）が裾に現れたら Diverges とみなす
    GROWTH_BOUND = 1e12

    # --- Dykstra 反復（GeneralIntersection の射影） ---
    # 反復回数の上限
    DYKSTRA_MAX_ITER = 10_000
    # 1 周あたりの変化量がこれ以下になったら収束とみなす
    DYKSTRA_EPS = 1e-12
    # 改善が見られない周回がこの回数続いたら停滞として打ち切る
    DYKSTRA_STALL_WINDOW = 500
    # 打ち切り後の実行可能性検査（各集合への距離）。これを超えると空集合の疑い
    DYKSTRA_FEASIBILITY_TOL = 1e-6


class ClassifierConfig:
    """
    単調性クラス分類器（Fejér / Fejér* / 準 Fejér / Opial）の設定クラス。

    準 Fejér の総和可能性は有限ホライズンでは決定できないため、
    2 段のヒューリスティック（裾の増分の大きさ + 窓ごとの部分和比較）で判定します。
    """

    # --- 準 Fejér 総和可能性ヒューリスティック ---
    # 裾における ε_n の最大値がこれ以下なら「小さい」
    QF_STEP_TOL = 1e-6
    # 裾の ε の総和がこれ以下なら「総和可能」とみなす
    QF_MASS_TOL = 1e-4
    # 裾の後半の質量が前半の質量のこの割合以上残っていれば「発散的」とみなす
    # （調和級数程度の減衰は発散側に分類される）
    QF_DIVERGENCE_RATIO = 0.6

    # --- テスト点サンプラー ---
    # 既定のテスト点数
    DEFAULT_TEST_POINTS = 16
    # 準乱数点群の座標範囲 [-SCALE, SCALE]
    SAMPLE_SCALE = 2.0
    # サンプラーの既定シード（再現性のため固定）
    SAMPLE_SEED = 7

    # --- Robbins–Siegmund 検査 ---
    # 裾の開始位置（列長に対する割合）。tail_start 未指定時に使う
    RS_TAIL_FRACTION = 0.75

    # --- 並列評価 ---
    # テスト点ごとの評価に使うスレッド数（1 なら逐次）
    MAX_WORKERS = 1


class ClusterConfig:
    """
    強/弱クラスタ点抽出の設定クラス。

    弱クラスタ点は座標ごとの裾極限による代理（proxy）であり、
    生成器由来の基底方向に逃げる例に対してのみ妥当性を主張します。
    """

    # 強クラスタの併合半径
    MERGE_RADIUS = 1e-6
    # 「無限回訪れる」とみなす裾での最小出現回数
    RECURRENCE_COUNT = 3
    # 弱クラスタ代理で座標トレースを Cauchy とみなす幅
    COORD_CAUCHY_TOL = 1e-3
    # 探索する等差部分列の最大ストライド
    MAX_STRIDE = 4
    # 部分列の裾に必要な最小項数
    MIN_SUBSEQUENCE_TERMS = 3
    # 直交性検査の許容誤差
    ORTHOGONALITY_TOL = 1e-6


class SolverConfig:
    """
    漸近中心ソルバ（射影劣勾配 + 双対の仕上げ）の設定クラス。

    - 目的関数 f_T(x) = max_{n∈tail} ‖x−u_n‖² は係数 2 の強凸関数。
    - 劣勾配のステップは 1/(k+1)。証明書（双対ギャップ）が目標以下になれば停止します。
    """

    # 既定の目標ギャップ
    DEFAULT_SOLVER_TOL = 1e-10
    # 射影劣勾配の反復上限
    SUBGRADIENT_MAX_ITER = 2_000
    # ギャップ評価の間隔（反復数）
    GAP_CHECK_EVERY = 25
    # 双対側の加速射影勾配（仕上げ）の反復上限
    POLISH_MAX_ITER = 20_000
    # 総当たりオラクルの対象次元の上限
    BRUTEFORCE_MAX_DIM = 3
    # 総当たり評価のチャンクサイズ（メモリ使用量の上限）
    BRUTEFORCE_CHUNK = 1 << 16
