"""
子命令實作：solve、sweep、thirring、oracle
每個命令回傳行程結束碼（0 表示全部認證通過）
"""

import os

import numpy as np

from eigensolver import BoxTooSmallError, refine_state, solve
from nonlinear import (
    NoBoundStateError,
    SelfConsistencyError,
    certify_fixed_point,
    solve_self_consistent,
)
from observables import certify, state_diagnostics
from oracles import (
    diff_fixture_tables,
    generate_fixture_table,
    read_fixture_table,
    write_fixture_table,
)
from oracles.fixtures import SUPPORTED_FAMILIES
from potentials import eval_potential, save_tabulated_potential
from .result_writer import (
    state_record,
    summary_table,
    write_failures_csv,
    write_json,
    write_sweep_csv,
    write_trace_csv,
)
from .sweep_runner import run_sweep

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _banner(title):
    print("\n" + "=" * 60)
    print(title)
    print("=" * 60)


def _certified_record(state, spec, solver_options, verbose):
    refined = refine_state(state, spec, solver_options, verbose=verbose)
    certificate = certify(refined, verbose=verbose)
    return state_record(refined, certificate, spec, state_diagnostics(refined))


def cmd_solve(config, verbose=False):
    """求解、細化並認證所有束縛態，逐態寫出 JSON"""
    _banner(f"束縛態求解：{config.potential.describe()}")
    grid = config.grid
    print(f"  網格：L={grid.half_width:g}, n={grid.n_cells}, h={grid.h:g}，方法：{config.method}")
    try:
        states = solve(config.potential, grid, config.solver, method=config.method, verbose=verbose)
    except BoxTooSmallError as error:
        print(f"[Error] {error}")
        return EXIT_FAILED
    except ValueError as error:
        print(f"[Error] {error}")
        return EXIT_FAILED

    if not states:
        print("[Info] no bound states found（能隙內沒有束縛態）")
        return EXIT_OK

    records = []
    for index, state in enumerate(states):
        try:
            record = _certified_record(state, config.potential, config.solver, verbose)
        except ValueError as error:
            print(f"[Error] 第 {index} 個束縛態無法認證: {error}")
            return EXIT_FAILED
        path = os.path.join(config.out_dir, f"state_{index:02d}.json")
        write_json(record, path)
        records.append(record)
        print(f"[Info] 已寫出 {path}")

    print("\n" + summary_table(records).to_string(index=False))
    failed = sum(1 for record in records if not record['passed'])
    if failed:
        print(f"\n[Error] {failed}/{len(records)} 個束縛態未通過認證")
        return EXIT_FAILED
    print(f"\n[Success] {len(records)} 個束縛態全部通過認證")
    return EXIT_OK


def cmd_sweep(config, verbose=False):
    """參數掃描，寫出 sweep.csv（與 sweep_failures.csv）"""
    if config.sweep is None:
        print("[Error] 設定檔沒有 sweep 區塊")
        return EXIT_USAGE
    axis = config.sweep
    _banner(
        f"參數掃描：{config.potential.describe()}，{axis.parameter} ∈ "
        f"[{axis.minimum:g}, {axis.maximum:g}]，{axis.steps} 點，{config.jobs} 個行程"
    )
    rows, failures = run_sweep(config, verbose=verbose)
    path = os.path.join(config.out_dir, 'sweep.csv')
    write_sweep_csv([row.as_dict() for row in rows], path)
    print(f"[Info] 已寫出 {path}（{len(rows)} 列）")
    if failures:
        failure_path = os.path.join(config.out_dir, 'sweep_failures.csv')
        write_failures_csv(failures, failure_path)
        print(f"[Warning] {len(failures)} 個參數點求解失敗，見 {failure_path}")

    certified = [row for row in rows if row.state_index >= 0]
    if certified:
        delta_z = np.array([row.delta_z for row in certified])
        print(f"[Info] Δz 範圍 [{delta_z.min():.6f}, {delta_z.max():.6f}]")
    failed = sum(1 for row in rows if not row.passed)
    if failed or failures:
        print(f"[Error] {failed} 列未通過認證")
        return EXIT_FAILED
    print(f"[Success] 掃描完成，{len(rows)} 列全部通過認證")
    return EXIT_OK


def cmd_thirring(config, verbose=False):
    """自洽非線性求解，寫出態、迭代軌跡與有效位勢"""
    if config.nonlinear is None:
        print("[Error] 設定檔沒有 nonlinear 區塊")
        return EXIT_USAGE
    options = config.nonlinear
    grid = config.grid
    _banner(f"自洽非線性求解：g={options.coupling:g}，seed={options.seed_spec.describe()}")
    trace_path = os.path.join(config.out_dir, 'trace.csv')
    try:
        result = solve_self_consistent(options, grid, config.solver, verbose=verbose)
    except SelfConsistencyError as error:
        write_trace_csv(error.trace, trace_path)
        print(f"[Error] {error}")
        print(f"[Info] 最佳迭代 γ = {error.best_state.gamma:.12f}，軌跡見 {trace_path}")
        return EXIT_FAILED
    except NoBoundStateError as error:
        print(f"[Error] {error}")
        return EXIT_FAILED

    write_trace_csv(result.trace, trace_path)
    try:
        refined, certificate = certify_fixed_point(result, options, config.solver, verbose=verbose)
    except (SelfConsistencyError, NoBoundStateError) as error:
        print(f"[Error] 細化網格上的自洽迭代失敗: {error}")
        return EXIT_FAILED
    record = state_record(refined, certificate, result.effective_spec, state_diagnostics(refined))
    record['coupling'] = float(options.coupling)
    record['iterations'] = len(result.trace)
    state_path = os.path.join(config.out_dir, 'thirring_state.json')
    write_json(record, state_path)
    potential_path = os.path.join(config.out_dir, 'effective_potential.txt')
    save_tabulated_potential(
        grid.phi_points,
        eval_potential(result.effective_spec, grid.phi_points),
        potential_path,
        header=f"f_eff = {options.seed_spec.describe()} + g·ρ, g = {options.coupling:g}",
    )
    print(f"[Info] 已寫出 {state_path}、{trace_path}、{potential_path}")
    print("\n" + summary_table([record]).to_string(index=False))
    if not certificate.passed:
        print(f"[Error] 自洽態未通過認證：{certificate.failed_checks()}")
        return EXIT_FAILED
    print("[Success] 自洽態通過認證")
    return EXIT_OK


def cmd_oracle(config, verbose=False):
    """重新產生解析本徵值表並與已提交的表比對"""
    family = config.potential.family
    if family not in SUPPORTED_FAMILIES:
        print(f"[Error] 解析固定表不支援位勢族群 {family}（只支援 {SUPPORTED_FAMILIES}）")
        return EXIT_USAGE
    _banner(f"解析本徵值固定表：{family}")
    table = generate_fixture_table(family, config.oracle_cases, verbose=verbose)
    path = os.path.join(config.out_dir, f"{family}_oracle.txt")
    os.makedirs(config.out_dir, exist_ok=True)
    write_fixture_table(table, path)
    print(f"[Info] 已寫出 {path}（{len(table)} 列）")

    if not os.path.exists(config.fixture_path):
        print(f"[Warning] 找不到已提交的固定表 {config.fixture_path}，略過比對")
        return EXIT_OK
    committed = read_fixture_table(config.fixture_path)
    committed = committed[committed['family'] == family]
    differences = diff_fixture_tables(committed, table)
    if len(differences):
        print(f"[Error] 與 {config.fixture_path} 有 {len(differences)} 處差異：")
        print(differences.to_string(index=False))
        return EXIT_FAILED
    print(f"[Success] 與 {config.fixture_path} 零差異")
    return EXIT_OK
