"""
參數掃描模組
各參數點互相獨立，可用 multiprocessing.Pool 平行求解；輸出前依 (value, state_index) 排序
"""

from dataclasses import asdict, dataclass
from multiprocessing import Pool
from typing import Optional

from eigensolver import refine_state, solve
from observables import certify


@dataclass(frozen=True)
class SweepRow:
    """掃描結果的一列；求解失敗的點 state_index = −1、數值欄為空"""

    param: str
    value: float
    state_index: int
    gamma: Optional[float] = None
    delta_z: Optional[float] = None
    abs_S: Optional[float] = None
    abs_first_moment: Optional[float] = None
    passed: Optional[bool] = False
    err_gamma: Optional[float] = None
    err_delta_z: Optional[float] = None

    def as_dict(self):
        record = asdict(self)
        record['pass'] = record.pop('passed')
        return record


@dataclass(frozen=True)
class SweepTask:
    """單一參數點的求解工作（可序列化後送到子行程）"""

    spec: object
    grid: object
    method: str
    solver: object
    parameter: str
    value: float
    verbose: bool = False


def solve_point(task):
    """
    求解並認證單一參數點

    回傳:
    - (rows, failure)：failure 為 None 或 {'param', 'value', 'error'}
    """
    spec = task.spec.with_parameter(task.parameter, task.value)
    try:
        states = solve(spec, task.grid, task.solver, method=task.method, verbose=task.verbose)
        rows = []
        for index, state in enumerate(states):
            refined = refine_state(state, spec, task.solver, verbose=task.verbose)
            certificate = certify(refined, verbose=task.verbose)
            errors = certificate.discretization_error_estimates
            rows.append(SweepRow(
                param=task.parameter,
                value=float(task.value),
                state_index=index,
                gamma=certificate.gamma,
                delta_z=certificate.delta_z,
                abs_S=abs(certificate.overlap_S),
                abs_first_moment=certificate.abs_first_moment,
                passed=certificate.passed,
                err_gamma=errors['gamma'],
                err_delta_z=errors['delta_z'],
            ))
        if not rows:
            print(f"[Info] {task.parameter}={task.value:g}：沒有束縛態")
        return rows, None
    except (ValueError, RuntimeError) as error:
        print(f"[Error] {task.parameter}={task.value:g} 求解失敗: {error}")
        row = SweepRow(param=task.parameter, value=float(task.value), state_index=-1)
        return [row], {'param': task.parameter, 'value': float(task.value), 'error': str(error)}


def run_sweep(config, verbose=False):
    """
    執行參數掃描

    參數:
    - config: RunConfig（sweep 不可為 None）
    - verbose: 是否列印除錯訊息

    回傳:
    - (rows, failures)：rows 依 (value, state_index) 排序
    """
    if config.sweep is None:
        raise ValueError("設定檔沒有 sweep 區塊")
    tasks = [
        SweepTask(
            spec=config.potential,
            grid=config.grid,
            method=config.method,
            solver=config.solver,
            parameter=config.sweep.parameter,
            value=float(value),
            verbose=verbose,
        )
        for value in config.sweep.values()
    ]
    if config.jobs > 1:
        with Pool(processes=config.jobs) as pool:
            results = pool.map(solve_point, tasks)
    else:
        results = [solve_point(task) for task in tasks]

    rows = [row for point_rows, _ in results for row in point_rows]
    rows.sort(key=lambda row: (row.value, row.state_index))
    failures = [failure for _, failure in results if failure is not None]
    failures.sort(key=lambda failure: failure['value'])
    return rows, failures
