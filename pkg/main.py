# main.py
"""
エントリポイント。サブコマンドの説明は `python main.py --help` を参照。
"""
import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
