"""
網格加倍細化與 Richardson 外插
"""

import dataclasses

import numpy as np

from . import matrix_solver, shooting
from .bound_state import METHOD_MATRIX, SolverOptions

# 假設離散誤差 O(h²)
REFINEMENT_ORDER = 2


def _solver_for(method):
    return matrix_solver.solve_near if method == METHOD_MATRIX else shooting.solve_near


def _is_monotone(gammas, floor):
    """連續差分同號且遞減；差分都小於 floor 時視為已收斂"""
    diffs = np.diff(gammas)
    if np.all(np.abs(diffs) < floor):
        return True
    if not (np.all(diffs > 0) or np.all(diffs < 0)):
        return False
    return bool(np.all(np.abs(diffs[1:]) < np.abs(diffs[:-1])))


def refine_state(state, spec, opts=None, verbose=False):
    """
    在加倍網格上重解同一束縛態並外插 γ

    參數:
    - state: BoundState（求解器輸出）
    - spec: 產生該狀態的 PotentialSpec
    - opts: SolverOptions（n_refine 為加倍次數）
    - verbose: 是否列印各層 γ

    回傳:
    - 最細網格上的 BoundState，gamma 為外插值並附 gamma_error、coarse_state、
      refinement_history 與 monotone_convergence
    """
    if state is None:
        raise ValueError("refine_state 需要一個束縛態（收到 None，可能是位勢沒有束縛態）")
    opts = opts or SolverOptions()
    solve_near = _solver_for(state.method)

    levels = [state]
    grid = state.grid
    for _ in range(opts.n_refine):
        grid = grid.refined(2)
        finer = solve_near(spec, grid, levels[-1].gamma, state.parity, opts)
        if finer is None:
            print(
                f"[Warning] n={grid.n_cells} 找不到 γ≈{levels[-1].gamma:.8f} 的對應態，停止細化"
            )
            break
        levels.append(finer)
        if verbose:
            print(f"[Debug] 細化 n={grid.n_cells}: γ={finer.gamma:.14f}")

    return extrapolate_levels(levels, opts)


def extrapolate_levels(levels, opts=None):
    """
    由逐層加倍網格上的同一束縛態外插 γ

    參數:
    - levels: 由粗到細的 BoundState 序列（每層 n_cells 加倍）
    - opts: SolverOptions（bisection_tol 決定單調判斷的下限）

    回傳:
    - 最細層的 BoundState，附外插 γ、gamma_error、coarse_state 與 refinement_history
    """
    if not levels:
        raise ValueError("extrapolate_levels 需要至少一層")
    opts = opts or SolverOptions()
    history = tuple((s.grid.n_cells, s.gamma) for s in levels)
    finest = levels[-1]
    if len(levels) == 1:
        return dataclasses.replace(
            finest, gamma_error=finest.grid.h ** 2, refinement_history=history
        )

    gammas = np.array([s.gamma for s in levels])
    ratio = 2.0 ** REFINEMENT_ORDER - 1.0
    delta = gammas[-1] - gammas[-2]
    gamma = gammas[-1] + delta / ratio
    error = abs(delta) / ratio

    monotone = None
    if len(levels) >= 3:
        monotone = _is_monotone(gammas, 10.0 * opts.bisection_tol)
        if not monotone:
            print(
                f"[Warning] γ 細化序列非單調收斂 {np.array2string(gammas, precision=12)}，"
                f"保留最細網格值並放寬誤差"
            )
            gamma = gammas[-1]
            error = float(np.max(np.abs(np.diff(gammas))))

    return dataclasses.replace(
        finest,
        gamma=float(gamma),
        gamma_error=float(error),
        coarse_state=levels[-2],
        refinement_history=history,
        monotone_convergence=monotone,
    )
