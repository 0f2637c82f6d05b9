"""
本徵求解模組
交錯網格矩陣對角化與宇稱打靶法兩種獨立方法求能隙內束縛態
"""

from .bound_state import (
    PARITY_EVEN,
    PARITY_ODD,
    PARITIES,
    METHOD_MATRIX,
    METHOD_SHOOTING,
    METHODS,
    MIN_SOLVER_CELLS,
    SolverOptions,
    MatchResidual,
    BoundState,
    BoxTooSmallError,
)
from .hamiltonian import assemble_hamiltonian, hard_wall_hamiltonian, tridiagonal_form
from .state_builder import boundary_leak, parity_overlap
from .matrix_solver import find_bound_states
from .shooting import shoot, find_states_shooting
from .refinement import extrapolate_levels, refine_state
from . import matrix_solver, shooting


def solve(spec, grid, opts=None, method=METHOD_MATRIX, verbose=False):
    """依 method 選擇求解器"""
    if method == METHOD_MATRIX:
        return find_bound_states(spec, grid, opts, verbose=verbose)
    if method == METHOD_SHOOTING:
        return find_states_shooting(spec, grid, opts, verbose=verbose)
    raise ValueError(f"未知的求解方法: {method}（可用 {METHODS}）")


__all__ = [
    'PARITY_EVEN',
    'PARITY_ODD',
    'PARITIES',
    'METHOD_MATRIX',
    'METHOD_SHOOTING',
    'METHODS',
    'MIN_SOLVER_CELLS',
    'SolverOptions',
    'MatchResidual',
    'BoundState',
    'BoxTooSmallError',
    'assemble_hamiltonian',
    'hard_wall_hamiltonian',
    'tridiagonal_form',
    'boundary_leak',
    'parity_overlap',
    'find_bound_states',
    'shoot',
    'find_states_shooting',
    'refine_state',
    'extrapolate_levels',
    'solve',
    'matrix_solver',
    'shooting',
]
