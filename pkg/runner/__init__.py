"""
命令列執行模組
設定檔讀取、子命令、參數掃描與結果輸出
"""

from .config_loader import (
    ConfigError,
    RunConfig,
    SweepAxis,
    load_config,
    parse_potential,
)
from .sweep_runner import SweepRow, run_sweep, solve_point
from .result_writer import SWEEP_COLUMNS, state_record
from .commands import cmd_oracle, cmd_solve, cmd_sweep, cmd_thirring

COMMANDS = {
    'solve': cmd_solve,
    'sweep': cmd_sweep,
    'thirring': cmd_thirring,
    'oracle': cmd_oracle,
}

__all__ = [
    'ConfigError',
    'RunConfig',
    'SweepAxis',
    'load_config',
    'parse_potential',
    'SweepRow',
    'run_sweep',
    'solve_point',
    'SWEEP_COLUMNS',
    'state_record',
    'cmd_solve',
    'cmd_sweep',
    'cmd_thirring',
    'cmd_oracle',
    'COMMANDS',
]
