"""
執行設定讀取模組

JSON 設定檔（結構見 docs/CONFIG_SCHEMA.md）。優先順序：
命令列旗標 > 環境變數（DIRAC_OUT_DIR、DIRAC_JOBS）> 設定檔 > 預設值。
環境變數只覆寫輸出目錄與平行數。
"""

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import numpy as np

from core import make_grid
from eigensolver import METHOD_MATRIX, METHODS, SolverOptions
from nonlinear import NonlinearOptions
from oracles import DEFAULT_CASES
from potentials import FAMILY_PARAMETERS, PotentialSpec, load_tabulated_potential

PROJECT_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_FIXTURE_PATH = PROJECT_ROOT / 'fixtures' / 'square_well_oracle.txt'

ENV_OUT_DIR = 'DIRAC_OUT_DIR'
ENV_JOBS = 'DIRAC_JOBS'

TOP_LEVEL_KEYS = (
    'potential', 'grid', 'solver', 'nonlinear', 'sweep', 'oracle', 'output', 'parallelism',
)
SOLVER_FIELDS = tuple(f.name for f in fields(SolverOptions))
NONLINEAR_KEYS = ('coupling', 'alpha', 'max_iterations', 'fixed_point_tol', 'initial_width', 'seed')


class ConfigError(ValueError):
    """設定檔錯誤（格式、缺少欄位或不合法的值）"""


@dataclass(frozen=True)
class SweepAxis:
    """掃描軸：對 potential 的單一數值參數做等距掃描"""

    parameter: str
    minimum: float
    maximum: float
    steps: int

    def values(self):
        return np.linspace(self.minimum, self.maximum, self.steps)


@dataclass(frozen=True)
class RunConfig:
    """一次執行的完整設定"""

    potential: PotentialSpec
    grid: object
    method: str = METHOD_MATRIX
    solver: SolverOptions = SolverOptions()
    nonlinear: Optional[NonlinearOptions] = None
    sweep: Optional[SweepAxis] = None
    oracle_cases: tuple = DEFAULT_CASES
    fixture_path: str = str(DEFAULT_FIXTURE_PATH)
    out_dir: str = 'output'
    jobs: int = 1
    config_path: Optional[str] = None


def _section(data, key, allowed=None):
    section = data.get(key, {})
    if not isinstance(section, dict):
        raise ConfigError(f"設定區塊 '{key}' 必須是物件")
    if allowed is not None:
        unknown = sorted(set(section) - set(allowed))
        if unknown:
            raise ConfigError(f"設定區塊 '{key}' 含未知欄位: {unknown}（可用 {list(allowed)}）")
    return section


def _resolve(path, base_dir):
    path = Path(path)
    return str(path if path.is_absolute() else (base_dir / path))


def parse_potential(data, base_dir):
    """由設定物件建立 PotentialSpec"""
    if not isinstance(data, dict) or 'family' not in data:
        raise ConfigError("potential 需要 'family' 欄位")
    family = data['family']
    if family not in FAMILY_PARAMETERS or family == 'composite':
        raise ConfigError(f"未知的位勢族群: {family}")
    try:
        if family == 'zero':
            return PotentialSpec.zero()
        if family == 'tabulated':
            symmetrize = bool(data.get('symmetrize', False))
            if 'path' in data:
                return load_tabulated_potential(_resolve(data['path'], base_dir), symmetrize=symmetrize)
            if 'z' in data and 'f' in data:
                return PotentialSpec.tabulated(data['z'], data['f'], symmetrize=symmetrize)
            raise ConfigError("tabulated 位勢需要 'path' 或 'z'/'f'")
        depth_name, width_name = FAMILY_PARAMETERS[family]
        for name in (depth_name, width_name):
            if name not in data:
                raise ConfigError(f"{family} 需要參數 '{name}'")
        return PotentialSpec(
            family,
            depth=float(data[depth_name]),
            width=float(data[width_name]),
            flip=bool(data.get('flip', False)),
        )
    except (TypeError, ValueError, FileNotFoundError) as error:
        if isinstance(error, ConfigError):
            raise
        raise ConfigError(f"位勢設定不合法: {error}") from error


def _parse_solver(data):
    section = _section(data, 'solver', SOLVER_FIELDS + ('method',))
    method = section.get('method', METHOD_MATRIX)
    if method not in METHODS:
        raise ConfigError(f"未知的求解方法: {method}（可用 {METHODS}）")
    options = {k: v for k, v in section.items() if k != 'method'}
    if 'gamma_window' in options:
        options['gamma_window'] = tuple(options['gamma_window'])
    try:
        solver = SolverOptions(**options)
    except (TypeError, ValueError) as error:
        raise ConfigError(f"solver 設定不合法: {error}") from error
    # 認證以最細兩層外插誤差
    if solver.n_refine < 1:
        raise ConfigError(f"solver.n_refine 必須 ≥ 1 才能認證: {solver.n_refine}")
    return method, solver


def _parse_nonlinear(data, base_dir):
    if 'nonlinear' not in data:
        return None
    section = _section(data, 'nonlinear', NONLINEAR_KEYS)
    if 'coupling' not in section:
        raise ConfigError("nonlinear 需要 'coupling'")
    options = {k: v for k, v in section.items() if k != 'seed'}
    seed = parse_potential(section['seed'], base_dir) if 'seed' in section else PotentialSpec.zero()
    try:
        return NonlinearOptions(seed_spec=seed, **options)
    except (TypeError, ValueError) as error:
        raise ConfigError(f"nonlinear 設定不合法: {error}") from error


def _parse_sweep(data, potential):
    if 'sweep' not in data:
        return None
    section = _section(data, 'sweep', ('parameter', 'min', 'max', 'steps'))
    missing = [k for k in ('parameter', 'min', 'max', 'steps') if k not in section]
    if missing:
        raise ConfigError(f"sweep 缺少欄位: {missing}")
    parameter = section['parameter']
    if parameter not in FAMILY_PARAMETERS[potential.family]:
        raise ConfigError(
            f"sweep 參數 '{parameter}' 不是 {potential.family} 的數值參數"
            f"（可用 {list(FAMILY_PARAMETERS[potential.family])}）"
        )
    steps = section['steps']
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 2:
        raise ConfigError(f"sweep steps 必須是 ≥ 2 的整數: {steps}")
    return SweepAxis(parameter, float(section['min']), float(section['max']), steps)


def _parse_oracle(data, base_dir):
    section = _section(data, 'oracle', ('cases', 'fixture'))
    cases = tuple(tuple(float(v) for v in case) for case in section.get('cases', DEFAULT_CASES))
    if any(len(case) != 2 for case in cases):
        raise ConfigError("oracle cases 每項需要 [V, a]")
    fixture = section.get('fixture')
    fixture_path = _resolve(fixture, base_dir) if fixture else str(DEFAULT_FIXTURE_PATH)
    return cases, fixture_path


def _parse_jobs(value, source):
    try:
        jobs = int(value)
    except (TypeError, ValueError) as error:
        raise ConfigError(f"{source} 的平行數不是整數: {value!r}") from error
    if jobs < 1:
        raise ConfigError(f"{source} 的平行數必須 ≥ 1: {jobs}")
    return jobs


def read_config_text(path):
    """讀取並解析 JSON；語法錯誤時附上行號、欄號與該行內容"""
    if not os.path.exists(path):
        raise ConfigError(f"找不到設定檔: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        lines = text.splitlines()
        line_text = lines[error.lineno - 1] if 0 < error.lineno <= len(lines) else ''
        raise ConfigError(
            f"設定檔 JSON 格式錯誤 {path} 第 {error.lineno} 行第 {error.colno} 欄：{error.msg}\n"
            f"  {error.lineno} | {line_text}"
        ) from error
    if not isinstance(data, dict):
        raise ConfigError(f"設定檔最外層必須是物件: {path}")
    return data


def load_config(path, out_dir=None, jobs=None, environ=None):
    """
    讀取執行設定

    參數:
    - path: JSON 設定檔路徑
    - out_dir: 命令列 --out（最高優先）
    - jobs: 命令列 --jobs（最高優先）
    - environ: 環境變數對照（預設 os.environ）

    回傳:
    - RunConfig
    """
    environ = os.environ if environ is None else environ
    data = read_config_text(path)
    unknown = sorted(set(data) - set(TOP_LEVEL_KEYS))
    if unknown:
        raise ConfigError(f"設定檔含未知區塊: {unknown}（可用 {list(TOP_LEVEL_KEYS)}）")
    base_dir = Path(path).resolve().parent

    if 'potential' not in data:
        raise ConfigError("設定檔需要 'potential' 區塊")
    potential = parse_potential(data['potential'], base_dir)

    grid_section = _section(data, 'grid', ('half_width', 'n_cells'))
    try:
        grid = make_grid(grid_section.get('half_width', 20.0), grid_section.get('n_cells', 800))
    except (TypeError, ValueError) as error:
        raise ConfigError(f"grid 設定不合法: {error}") from error

    method, solver = _parse_solver(data)
    nonlinear = _parse_nonlinear(data, base_dir)
    sweep = _parse_sweep(data, potential)
    cases, fixture_path = _parse_oracle(data, base_dir)

    output_section = _section(data, 'output', ('dir',))
    resolved_out = _resolve(output_section.get('dir', 'output'), base_dir)
    if environ.get(ENV_OUT_DIR):
        resolved_out = environ[ENV_OUT_DIR]
    if out_dir:
        resolved_out = out_dir

    parallel_section = _section(data, 'parallelism', ('jobs',))
    resolved_jobs = _parse_jobs(parallel_section.get('jobs', 1), '設定檔')
    if environ.get(ENV_JOBS):
        resolved_jobs = _parse_jobs(environ[ENV_JOBS], ENV_JOBS)
    if jobs is not None:
        resolved_jobs = _parse_jobs(jobs, '--jobs')

    return RunConfig(
        potential=potential,
        grid=grid,
        method=method,
        solver=solver,
        nonlinear=nonlinear,
        sweep=sweep,
        oracle_cases=cases,
        fixture_path=fixture_path,
        out_dir=resolved_out,
        jobs=resolved_jobs,
        config_path=str(path),
    )
