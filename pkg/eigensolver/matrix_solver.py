"""
矩陣對角化求解模組
對稱交錯網格 Hamiltonian 的三對角形式，以 eigh_tridiagonal 取能隙內本徵對
"""

import dataclasses

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .bound_state import METHOD_MATRIX, SolverOptions, check_parity
from .hamiltonian import interleaved_to_spinor, tridiagonal_form, tridiagonal_matvec
from .state_builder import build_state, check_solver_inputs, filter_leaky_states


def find_bound_states(spec, grid, opts=None, verbose=False):
    """
    求 gamma_window 內所有束縛態

    參數:
    - spec: PotentialSpec
    - grid: Grid（n_cells ≥ 8）
    - opts: SolverOptions（預設值見 SolverOptions）
    - verbose: 是否列印除錯訊息

    回傳:
    - 依 γ 遞增排序的 BoundState 列表（沒有束縛態時為空列表）
    """
    opts = opts or SolverOptions()
    check_solver_inputs(spec, grid)
    diagonal, off_diagonal = tridiagonal_form(spec, grid)
    lo, hi = opts.gamma_window
    eigenvalues, eigenvectors = eigh_tridiagonal(
        diagonal, off_diagonal, select='v', select_range=(lo, hi)
    )
    if verbose:
        print(
            f"[Debug] 矩陣法：{spec.describe()}，L={grid.half_width:g}，"
            f"n={grid.n_cells}，區間內 {len(eigenvalues)} 個本徵值"
        )
    states = []
    for k, gamma in enumerate(eigenvalues):
        vector = eigenvectors[:, k]
        residual = np.linalg.norm(
            tridiagonal_matvec(diagonal, off_diagonal, vector) - gamma * vector
        ) / np.linalg.norm(vector)
        spinor = interleaved_to_spinor(vector, grid)
        states.append(build_state(gamma, spinor, grid, METHOD_MATRIX, residual, opts))
    return filter_leaky_states(states, grid, opts, verbose=verbose)


def solve_near(spec, grid, gamma, parity, opts=None, width=5e-3):
    """
    在 γ 附近找同宇稱、最接近的矩陣法束縛態（細化用）

    回傳:
    - BoundState 或 None
    """
    check_parity(parity)
    opts = opts or SolverOptions()
    lo = max(gamma - width, -1.0 + 1e-9)
    hi = min(gamma + width, 1.0 - 1e-9)
    local = dataclasses.replace(opts, gamma_window=(lo, hi))
    candidates = [s for s in find_bound_states(spec, grid, local) if s.parity == parity]
    if not candidates:
        return None
    return min(candidates, key=lambda s: abs(s.gamma - gamma))
