"""
產生方井解析本徵值固定表
與 `python main.py oracle` 使用相同的程式路徑
"""

import argparse
import sys
from pathlib import Path

# 專案根目錄
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from oracles import DEFAULT_CASES, generate_fixture_table, write_fixture_table


def _parse_args():
    parser = argparse.ArgumentParser(description="產生方井解析本徵值固定表")
    parser.add_argument(
        "--output",
        type=str,
        default=str(PROJECT_ROOT / "fixtures" / "square_well_oracle.txt"),
        help="輸出路徑（預設 fixtures/square_well_oracle.txt）",
    )
    parser.add_argument(
        "--date",
        type=str,
        default=None,
        help="產生日期 YYYY-MM-DD（預設今天）",
    )
    parser.add_argument("--verbose", action="store_true", help="列印每個案例的根數")
    return parser.parse_args()


def main():
    args = _parse_args()
    print("\n" + "=" * 60)
    print("方井解析本徵值固定表")
    print("=" * 60)
    table = generate_fixture_table('square_well', DEFAULT_CASES, generated=args.date, verbose=args.verbose)
    write_fixture_table(table, args.output)
    print(table.to_string(index=False))
    print(f"\n[Success] 已寫出 {args.output}（{len(table)} 列）")


if __name__ == "__main__":
    main()
