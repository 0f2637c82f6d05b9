"""
自洽非線性求解模組

密度相依位勢 W = g·ρ 與外加位勢以相同方式進入兩條方程：
f_eff = f_seed + W。以欠鬆弛固定點迭代
  W_{n+1} = (1 − α)·W_n + α·g·ρ_n
求自束縛態，ρ_n 為 f_eff(W_n) 下最低的 even_phi 束縛態密度。
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from core import density, quadrature
from eigensolver import (
    BoxTooSmallError,
    PARITY_EVEN,
    SolverOptions,
    extrapolate_levels,
    find_bound_states,
)
from observables import certify
from potentials import PotentialSpec


@dataclass(frozen=True)
class NonlinearOptions:
    """
    非線性迭代選項

    - coupling: 耦合常數 g（g < 0 為吸引）
    - alpha: 混合係數，0 < α ≤ 1
    - max_iterations: 最大迭代次數
    - fixed_point_tol: ‖W_{n+1} − W_n‖∞ 的收斂門檻
    - seed_spec: 初始線性問題的位勢（zero 族群僅限 g < 0）
    - initial_width: seed 為 zero 時初始高斯密度的寬度
    """

    coupling: float
    alpha: float = 0.3
    max_iterations: int = 500
    fixed_point_tol: float = 1e-10
    seed_spec: PotentialSpec = field(default_factory=PotentialSpec.zero)
    initial_width: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.coupling):
            raise ValueError(f"coupling 必須為有限實數: {self.coupling}")
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha 必須在 (0, 1] 內: {self.alpha}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations 必須 ≥ 1: {self.max_iterations}")
        if self.fixed_point_tol <= 0:
            raise ValueError(f"fixed_point_tol 必須 > 0: {self.fixed_point_tol}")
        if self.initial_width <= 0:
            raise ValueError(f"initial_width 必須 > 0: {self.initial_width}")
        if self.seed_spec.family == 'zero' and self.coupling >= 0:
            raise ValueError("seed 為 zero 位勢時需要吸引耦合 g < 0")


class TraceEntry(NamedTuple):
    iteration: int
    gamma: float
    delta_w: float


class SelfConsistentResult(NamedTuple):
    """收斂結果：state 由 w_profile 產生"""

    state: object
    w_profile: np.ndarray
    trace: tuple
    effective_spec: PotentialSpec


class NoBoundStateError(RuntimeError):
    """某次迭代的有效位勢沒有 even_phi 束縛態"""

    def __init__(self, iteration, detail=''):
        self.iteration = iteration
        message = f"第 {iteration} 次迭代沒有 even_phi 束縛態"
        if detail:
            message += f"：{detail}"
        super().__init__(message)


class SelfConsistencyError(RuntimeError):
    """超過 max_iterations 仍未收斂；保留最佳迭代"""

    def __init__(self, best_state, best_w, final_delta, trace):
        self.best_state = best_state
        self.best_w = best_w
        self.final_delta = final_delta
        self.trace = tuple(trace)
        super().__init__(
            f"自洽迭代 {len(self.trace)} 次未收斂：最後 ‖ΔW‖∞ = {final_delta:.3e}，"
            f"最佳 γ = {best_state.gamma:.10f}"
        )


def effective_spec(seed_spec, grid, w_profile):
    """f_eff = f_seed + W；W 全為零時直接回傳 seed"""
    if not np.any(w_profile):
        return seed_spec
    return PotentialSpec.composite(seed_spec, grid.phi_points, w_profile)


def initial_profile(opts, grid):
    """W₀：seed 為 zero 時取 g 乘上歸一化高斯密度，否則為零"""
    z = grid.phi_points
    if opts.seed_spec.family != 'zero':
        return np.zeros_like(z)
    gaussian = np.exp(-((z / opts.initial_width) ** 2))
    gaussian = gaussian / quadrature(gaussian, grid)
    return opts.coupling * gaussian


def _lowest_even_state(spec, grid, solver_options, iteration):
    try:
        states = find_bound_states(spec, grid, solver_options)
    except BoxTooSmallError as error:
        raise NoBoundStateError(iteration, str(error)) from error
    even = [s for s in states if s.parity == PARITY_EVEN]
    if not even:
        raise NoBoundStateError(iteration)
    return even[0]


def solve_self_consistent(opts, grid, solver_options=None, verbose=False, initial_w=None):
    """
    求解自洽固定點

    參數:
    - opts: NonlinearOptions
    - grid: Grid
    - solver_options: 每次線性求解用的 SolverOptions
    - verbose: 是否列印每次迭代
    - initial_w: φ 點上的起始 W（None 時用 initial_profile）

    回傳:
    - SelfConsistentResult(state, w_profile, trace, effective_spec)
    """
    solver_options = solver_options or SolverOptions()
    if initial_w is None:
        w_profile = initial_profile(opts, grid)
    else:
        w_profile = np.asarray(initial_w, dtype=float)
        if w_profile.shape != (grid.n_cells + 1,):
            raise ValueError(
                f"initial_w 長度 {w_profile.shape} 與網格 φ 點數 {grid.n_cells + 1} 不符"
            )
    trace = []
    best = None

    for iteration in range(1, opts.max_iterations + 1):
        spec = effective_spec(opts.seed_spec, grid, w_profile)
        state = _lowest_even_state(spec, grid, solver_options, iteration)
        target = opts.coupling * density(state.spinor, grid).rho
        delta_w = float(opts.alpha * np.max(np.abs(target - w_profile)))
        trace.append(TraceEntry(iteration, state.gamma, delta_w))
        if best is None or delta_w < best[2]:
            best = (state, w_profile, delta_w)
        if verbose:
            print(f"[Debug] 迭代 {iteration}: γ={state.gamma:.12f} ‖ΔW‖∞={delta_w:.3e}")
        if delta_w < opts.fixed_point_tol:
            print(f"[Success] 自洽迭代於第 {iteration} 次收斂，γ = {state.gamma:.12f}")
            return SelfConsistentResult(state, w_profile, tuple(trace), spec)
        w_profile = (1.0 - opts.alpha) * w_profile + opts.alpha * target

    raise SelfConsistencyError(best[0], best[1], trace[-1].delta_w, trace)


def certify_fixed_point(result, opts, solver_options=None, verbose=False):
    """
    在加倍網格上重解自洽固定點並認證

    每一層以上一層的 W 線性內插為起點重新迭代，W 與束縛態一起細化；
    各層 γ 以 Richardson 外插，最細兩層提供觀測量的離散誤差估計。

    參數:
    - result: solve_self_consistent 的收斂結果
    - opts: 產生 result 的 NonlinearOptions
    - solver_options: SolverOptions（n_refine 為加倍次數）
    - verbose: 是否列印各層 γ

    回傳:
    - (最細層的 BoundState（附外插 γ 與誤差）, Certificate)
    """
    solver_options = solver_options or SolverOptions()
    levels = [result.state]
    grid = result.state.grid
    w_profile = result.w_profile
    for _ in range(solver_options.n_refine):
        finer = grid.refined(2)
        warm = np.interp(finer.phi_points, grid.phi_points, w_profile)
        level = solve_self_consistent(opts, finer, solver_options, verbose=verbose, initial_w=warm)
        levels.append(level.state)
        if verbose:
            print(
                f"[Debug] 自洽細化 n={finer.n_cells}: γ={level.state.gamma:.14f}，"
                f"{len(level.trace)} 次迭代"
            )
        grid, w_profile = finer, level.w_profile
    refined = extrapolate_levels(levels, solver_options)
    return refined, certify(refined, verbose=verbose)
