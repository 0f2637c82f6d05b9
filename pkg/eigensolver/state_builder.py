"""
束縛態後處理
歸一化、固定整體正負號、宇稱分類、邊界洩漏計算與洩漏過濾
"""

import numpy as np

from core import density, interpolate_chi_to_phi, normalize, reflect
from potentials import validate_symmetry
from .bound_state import (
    PARITY_EVEN,
    PARITY_ODD,
    BoundState,
    BoxTooSmallError,
    MIN_SOLVER_CELLS,
)


def check_solver_inputs(spec, grid):
    """求解前置檢查：格數足夠、位勢對稱"""
    if grid.n_cells < MIN_SOLVER_CELLS:
        raise ValueError(f"求解器需要 n_cells ≥ {MIN_SOLVER_CELLS}: {grid.n_cells}")
    report = validate_symmetry(spec, grid)
    if not report.ok:
        raise ValueError(f"位勢不對稱，無法求解：{report.describe()}")
    return report


def boundary_leak(spinor, grid):
    """ρ 在 |z| = L 的值相對於 max ρ"""
    rho = density(spinor, grid).rho
    peak = float(np.max(rho))
    if peak <= 0.0:
        return float('inf')
    return float(max(rho[0], rho[-1]) / peak)


def parity_overlap(spinor):
    """離散內積 ⟨Ψ, RΨ⟩/⟨Ψ, Ψ⟩，R 為宇稱映射"""
    mirrored = reflect(spinor)
    numerator = np.dot(spinor.phi, mirrored.phi) + np.dot(spinor.chi, mirrored.chi)
    denominator = np.dot(spinor.phi, spinor.phi) + np.dot(spinor.chi, spinor.chi)
    return float(numerator / denominator)


def fix_sign(spinor, grid, parity):
    """
    固定整體正負號：even_phi 要求 φ(0) > 0，odd_phi 要求 χ(0) > 0

    中心值恰為 0 時（例如簡併組合）改用絕對值最大的分量決定正負。
    """
    center = grid.center_index
    if parity == PARITY_EVEN:
        pivot = spinor.phi[center]
    else:
        pivot = interpolate_chi_to_phi(spinor, grid)[center]
    if pivot == 0.0:
        stacked = np.concatenate([spinor.phi, spinor.chi])
        pivot = stacked[int(np.argmax(np.abs(stacked)))]
    return spinor.scaled(-1.0) if pivot < 0 else spinor


def build_state(gamma, spinor, grid, method, residual, opts, expected_parity=None):
    """
    由原始本徵向量建立 BoundState

    參數:
    - gamma: 本徵值
    - spinor: 未歸一化的 Spinor
    - grid: Grid
    - method: 'matrix' 或 'shooting'
    - residual: 殘差
    - opts: SolverOptions
    - expected_parity: 已知宇稱（打靶法），None 時由重疊正負號判定

    回傳:
    - BoundState
    """
    overlap = parity_overlap(spinor)
    parity = expected_parity or (PARITY_EVEN if overlap >= 0 else PARITY_ODD)
    if abs(abs(overlap) - 1.0) > opts.parity_tol:
        print(
            f"[Warning] γ={gamma:.10f} 的宇稱重疊 {overlap:.12f} 偏離 ±1"
            f"（可能為簡併態或位勢不對稱）"
        )
    if residual > opts.residual_tol:
        print(f"[Warning] γ={gamma:.10f} 的本徵殘差 {residual:.2e} 超過 {opts.residual_tol:.0e}")
    spinor = fix_sign(normalize(spinor, grid), grid, parity)
    return BoundState(
        gamma=float(gamma),
        spinor=spinor,
        parity=parity,
        method=method,
        residual=float(residual),
        grid=grid,
        boundary_leak=boundary_leak(spinor, grid),
        parity_overlap=overlap,
    )


def filter_leaky_states(states, grid, opts, verbose=False):
    """
    依邊界洩漏過濾；全部候選都洩漏時拋出 BoxTooSmallError

    回傳:
    - 依 γ 遞增排序、最多 max_states 個的 BoundState 列表
    """
    if not states:
        return []
    kept = [s for s in states if s.boundary_leak <= opts.leak_tol]
    dropped = [s for s in states if s.boundary_leak > opts.leak_tol]
    if not kept:
        raise BoxTooSmallError(
            [s.gamma for s in dropped],
            [s.boundary_leak for s in dropped],
            grid.half_width,
            opts.leak_tol,
        )
    for s in dropped:
        print(
            f"[Warning] 捨棄 γ={s.gamma:.8f}（{s.parity}）：邊界洩漏 "
            f"{s.boundary_leak:.1e} > {opts.leak_tol:.0e}"
        )
    kept.sort(key=lambda s: (s.gamma, s.parity))
    if kept[0].gamma < -0.99:
        print(f"[Warning] 最低態 γ={kept[0].gamma:.6f} 接近下連續譜（Klein 區域）")
    if verbose:
        print(f"[Debug] 保留 {len(kept)} 個束縛態，捨棄 {len(dropped)} 個")
    return kept[: opts.max_states]
