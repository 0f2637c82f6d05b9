"""
一維 Dirac 束縛態求解與局域化認證主執行檔
子命令：solve、sweep、thirring、oracle
"""

import argparse
import os
import sys

# 設定編碼（Windows）
if os.name == 'nt':
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            try:
                stream.reconfigure(encoding='utf-8')
            except ValueError:
                pass

from runner import COMMANDS, ConfigError, load_config


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', required=True, help='JSON 設定檔路徑（見 docs/CONFIG_SCHEMA.md）')
    common.add_argument('--out', default=None, help='輸出目錄（覆寫 DIRAC_OUT_DIR 與設定檔）')
    common.add_argument('--jobs', type=int, default=None, help='平行行程數（覆寫 DIRAC_JOBS 與設定檔）')
    common.add_argument('--verbose', action='store_true', help='列印 [Debug] 訊息')

    parser = argparse.ArgumentParser(
        description="一維 Dirac 方程在有限對稱純量位勢中的束縛態求解與局域化認證"
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    subparsers.add_parser('solve', parents=[common], help='求解並認證所有束縛態')
    subparsers.add_parser('sweep', parents=[common], help='對位勢參數做掃描，輸出 CSV')
    subparsers.add_parser('thirring', parents=[common], help='自洽非線性（密度相依位勢）求解')
    subparsers.add_parser('oracle', parents=[common], help='重新產生方井解析本徵值表並比對')
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, out_dir=args.out, jobs=args.jobs)
    except ConfigError as error:
        print(f"[Error] {error}")
        return 2
    return COMMANDS[args.command](config, verbose=args.verbose)


if __name__ == '__main__':
    sys.exit(main())
