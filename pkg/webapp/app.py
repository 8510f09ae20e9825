"""
webapp/app.py

Flask による簡易ビューア（verify 報告の一覧・JSON・対応表）

- 実行方法はどちらでも可：
  - 推奨: `python -m webapp.app`（リポジトリ直下でモジュール実行）
  - 直接: `python webapp/app.py`（本ファイルを直接実行）

 直接実行時はカレントディレクトリが `webapp/` になるため、
 リポジトリ直下の `src/` を import できるように sys.path を調整する。
 報告ファイルは `python main.py verify --report reports/<name>.json` で作る。
"""

import json
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from flask import Flask, abort, jsonify, render_template

# --- import path の調整（webapp/ から直接実行しても src/ が読めるようにする）
PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.config.harness import HarnessConfig, ViewerConfig

# 報告名に使える文字（パス区切りや .. を弾く）
_NAME_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


# -------------------- 共通: ユーティリティ --------------------

def list_reports(report_dir: Path) -> List[str]:
    if not report_dir.is_dir():
        return []
    return sorted((p.stem for p in report_dir.glob("*.json")), reverse=True)


def safe_report_path(report_dir: Path, name: str) -> Path:
    if not _NAME_RE.fullmatch(name) or ".." in name:
        abort(400, description="invalid report name")
    return report_dir / f"{name}.json"


def load_report(report_dir: Path, name: str) -> Dict[str, Any]:
    path = safe_report_path(report_dir, name)
    if not path.exists():
        abort(404, description=f"report not found: {name}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError:
        abort(422, description=f"report is not valid JSON: {name}")


# -------------------- アプリ --------------------

def create_app(report_dir: Optional[Path] = None) -> Flask:
    app = Flask(__name__)
    root = Path(report_dir) if report_dir is not None else PROJECT_ROOT / HarnessConfig.REPORT_DIR
    app.config["REPORT_DIR"] = root

    @app.route("/")
    def index():
        return render_template("index.html", title="verify 報告一覧", reports=list_reports(root))

    @app.route("/api/reports/<name>")
    def api_report(name):
        return jsonify(load_report(root, name))

    @app.route("/reports/<name>")
    def show_report(name):
        report = load_report(root, name)
        return render_template(
            "report.html",
            title=f"{name} の対応表",
            name=name,
            scenarios=report.get("scenarios", []),
            counts=report.get("counts", {}),
            ok=report.get("ok", False),
        )

    return app


app = create_app()


if __name__ == "__main__":
    print(f"[viewer] reports: {app.config['REPORT_DIR']}", flush=True)
    app.run(host=ViewerConfig.HOST, port=ViewerConfig.PORT, debug=ViewerConfig.DEBUG)
