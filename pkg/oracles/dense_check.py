"""
稠密對角化交叉檢查
以 scipy.linalg.eigh 對整個約化 Hamiltonian 做完整對角化，與三對角路徑比對
"""

import numpy as np
from scipy.linalg import eigh

from core import Spinor
from eigensolver.bound_state import BoxTooSmallError, SolverOptions
from eigensolver.hamiltonian import hard_wall_hamiltonian
from eigensolver.state_builder import boundary_leak, check_solver_inputs

# 稠密對角化允許的最大格數
DENSE_MAX_CELLS = 2000


def dense_cross_check(spec, grid, opts=None):
    """
    稠密對角化求能隙內本徵值

    參數:
    - spec: PotentialSpec
    - grid: Grid（n_cells ≤ 2000）
    - opts: SolverOptions（使用 gamma_window、leak_tol、max_states）

    回傳:
    - 遞增排序的 γ 列表，與 find_bound_states 使用相同的洩漏過濾
    """
    if grid.n_cells > DENSE_MAX_CELLS:
        raise ValueError(
            f"稠密交叉檢查限 n_cells ≤ {DENSE_MAX_CELLS}: {grid.n_cells}"
        )
    opts = opts or SolverOptions()
    check_solver_inputs(spec, grid)
    n = grid.n_cells
    H = hard_wall_hamiltonian(spec, grid).toarray()
    eigenvalues, eigenvectors = eigh(H, subset_by_value=opts.gamma_window)

    gammas = []
    leaks = []
    for k, gamma in enumerate(eigenvalues):
        vector = eigenvectors[:, k]
        phi = np.zeros(n + 1)
        phi[1:-1] = vector[: n - 1]
        leaks.append(boundary_leak(Spinor(phi, vector[n - 1:]), grid))
        gammas.append(float(gamma))
    if not gammas:
        return []
    kept = [g for g, leak in zip(gammas, leaks) if leak <= opts.leak_tol]
    if not kept:
        raise BoxTooSmallError(gammas, leaks, grid.half_width, opts.leak_tol)
    return sorted(kept)[: opts.max_states]
