"""
打靶法求解模組

由 z = 0 依宇稱初值向外積分
  χ' = (1+f−γ)φ,   φ' = (γ+1−f)χ
殘差 F(γ) = χ(L) + κ·φ(L)/(γ+1) 只在衰減尾上為零；
對 γ 網格掃描變號，再以二分法逼近本徵值。
"""

import dataclasses

import numpy as np

from core import Spinor, decay_rate
from potentials import breakpoints, eval_potential
from .bound_state import (
    METHOD_SHOOTING,
    PARITIES,
    PARITY_EVEN,
    MatchResidual,
    SolverOptions,
    check_parity,
)
from .state_builder import build_state, check_solver_inputs, filter_leaky_states

# 超過此量級即重新縮放（不改變正負號）
RENORM_THRESHOLD = 1e100

# 二分法最多迭代次數
MAX_BISECTION_STEPS = 200


def initial_values(parity):
    """宇稱初值：even_phi 為 φ(0)=1, χ(0)=0；odd_phi 為 φ(0)=0, χ(0)=1"""
    check_parity(parity)
    return (1.0, 0.0) if parity == PARITY_EVEN else (0.0, 1.0)


def shooting_nodes(spec, grid):
    """
    積分節點 0, h/2, h, …, L，並把位勢跳躍點對齊或插入為節點

    回傳:
    - (nodes, base_mask)：base_mask 標記原本的半格點
    """
    nodes = 0.5 * grid.h * np.arange(grid.n_cells + 1, dtype=float)
    nodes[-1] = grid.half_width
    base_mask = np.ones(len(nodes), dtype=bool)
    for point in breakpoints(spec):
        if not (0.0 < point < grid.half_width):
            continue
        k = int(np.argmin(np.abs(nodes - point)))
        if abs(nodes[k] - point) <= 1e-9 * grid.h:
            nodes[k] = point
        else:
            position = int(np.searchsorted(nodes, point))
            nodes = np.insert(nodes, position, point)
            base_mask = np.insert(base_mask, position, False)
    return nodes, base_mask


def _stage_potentials(spec, nodes):
    """每一步 RK4 的位勢取樣：起點內側、中點、終點內側（跳躍點取單側極限）"""
    z0 = nodes[:-1]
    z1 = nodes[1:]
    f_start = eval_potential(spec, np.nextafter(z0, z1))
    f_mid = eval_potential(spec, 0.5 * (z0 + z1))
    f_end = eval_potential(spec, np.nextafter(z1, z0))
    return np.atleast_1d(f_start), np.atleast_1d(f_mid), np.atleast_1d(f_end)


def _derivative(phi, chi, gamma, f):
    return (gamma + 1.0 - f) * chi, (1.0 + f - gamma) * phi


def integrate(spec, gamma, initial, nodes, record=False):
    """
    古典四階 Runge–Kutta 沿節點積分（對 γ 陣列向量化）

    參數:
    - spec: PotentialSpec
    - gamma: γ（純量或陣列）
    - initial: (φ₀, χ₀) 初值
    - nodes: 積分節點（可遞增或遞減）
    - record: True 時回傳所有節點上的值（不做重新縮放）

    回傳:
    - record=False: (phi, chi, log_scale, diverged)，皆為與 gamma 同長度的陣列
    - record=True: (phi_path, chi_path)，形狀 (len(nodes), len(gamma))
    """
    gamma = np.atleast_1d(np.asarray(gamma, dtype=float))
    phi = np.full(gamma.shape, float(initial[0]))
    chi = np.full(gamma.shape, float(initial[1]))
    log_scale = np.zeros(gamma.shape)
    f_start, f_mid, f_end = _stage_potentials(spec, nodes)
    steps = np.diff(nodes)

    if record:
        phi_path = np.empty((len(nodes), len(gamma)))
        chi_path = np.empty((len(nodes), len(gamma)))
        phi_path[0] = phi
        chi_path[0] = chi

    for k, dz in enumerate(steps):
        k1p, k1c = _derivative(phi, chi, gamma, f_start[k])
        k2p, k2c = _derivative(phi + 0.5 * dz * k1p, chi + 0.5 * dz * k1c, gamma, f_mid[k])
        k3p, k3c = _derivative(phi + 0.5 * dz * k2p, chi + 0.5 * dz * k2c, gamma, f_mid[k])
        k4p, k4c = _derivative(phi + dz * k3p, chi + dz * k3c, gamma, f_end[k])
        phi = phi + dz / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        chi = chi + dz / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c)
        if record:
            phi_path[k + 1] = phi
            chi_path[k + 1] = chi
            continue
        magnitude = np.maximum(np.abs(phi), np.abs(chi))
        large = magnitude > RENORM_THRESHOLD
        if np.any(large):
            phi = np.where(large, phi / np.where(large, magnitude, 1.0), phi)
            chi = np.where(large, chi / np.where(large, magnitude, 1.0), chi)
            log_scale = log_scale + np.where(large, np.log(np.where(large, magnitude, 1.0)), 0.0)

    if record:
        if not (np.all(np.isfinite(phi_path)) and np.all(np.isfinite(chi_path))):
            raise RuntimeError("打靶積分溢位，無法重建旋量")
        return phi_path, chi_path
    diverged = ~(np.isfinite(phi) & np.isfinite(chi))
    return phi, chi, log_scale, diverged


def _match_values(spec, gammas, parity, nodes):
    """向量化計算 F(γ)：回傳 (values, log_scale, diverged)"""
    gammas = np.atleast_1d(np.asarray(gammas, dtype=float))
    phi, chi, log_scale, diverged = integrate(spec, gammas, initial_values(parity), nodes)
    kappa = np.sqrt((1.0 - gammas) * (1.0 + gammas))
    values = chi + kappa * phi / (gammas + 1.0)
    diverged = diverged | ~np.isfinite(values)
    return values, log_scale, diverged


def shoot(spec, gamma, parity, grid):
    """
    單一 γ 的打靶殘差

    參數:
    - spec: PotentialSpec
    - gamma: |γ| < 1
    - parity: even_phi 或 odd_phi
    - grid: Grid（決定步長 h/2 與終點 L）

    回傳:
    - MatchResidual
    """
    check_parity(parity)
    decay_rate(gamma)
    nodes, _ = shooting_nodes(spec, grid)
    values, log_scale, diverged = _match_values(spec, [gamma], parity, nodes)
    return MatchResidual(
        gamma=float(gamma),
        value=float(values[0]),
        parity=parity,
        diverged=bool(diverged[0]),
        log_scale=float(log_scale[0]),
    )


def _bisect_roots(spec, mesh, parity, nodes, tol):
    """掃描 γ 網格的變號並以向量化二分法收斂到 tol"""
    values, _, diverged = _match_values(spec, mesh, parity, nodes)
    valid = ~diverged
    signs = np.sign(values)
    exact = [float(mesh[i]) for i in np.flatnonzero(valid & (signs == 0))]
    change = valid[:-1] & valid[1:] & (signs[:-1] * signs[1:] < 0)
    lower = mesh[:-1][change].copy()
    upper = mesh[1:][change].copy()
    lower_sign = signs[:-1][change].copy()
    for _ in range(MAX_BISECTION_STEPS):
        if len(lower) == 0 or np.max(upper - lower) <= tol:
            break
        middle = 0.5 * (lower + upper)
        mid_values, _, _ = _match_values(spec, middle, parity, nodes)
        same = np.sign(mid_values) == lower_sign
        lower = np.where(same, middle, lower)
        upper = np.where(same, upper, middle)
    roots = list(0.5 * (lower + upper)) + exact
    return sorted(float(r) for r in roots)


def reconstruct_spinor(spec, gamma, parity, grid):
    """
    在整個網格上重建打靶解

    外向解積分到 L/2，取其中 |φ|²+|χ|² 最大的節點為接合點；由 L 以精確衰減尾
    (φ, χ) = (1, −κ/(γ+1)) 向內積分到同一節點，以最小平方比例接合；再依宇稱反射到 z < 0。

    回傳:
    - (Spinor, 接合點相對失配)
    """
    nodes, base_mask = shooting_nodes(spec, grid)
    kappa = decay_rate(gamma)
    half = int(np.argmin(np.abs(nodes - 0.5 * grid.half_width)))
    phi_out, chi_out = integrate(spec, gamma, initial_values(parity), nodes[: half + 1], record=True)
    joint = int(np.argmax(phi_out[:, 0] ** 2 + chi_out[:, 0] ** 2))
    phi_out = phi_out[: joint + 1]
    chi_out = chi_out[: joint + 1]
    tail = (1.0, -kappa / (gamma + 1.0))
    phi_in, chi_in = integrate(spec, gamma, tail, nodes[joint:][::-1], record=True)
    phi_in = phi_in[::-1, 0]
    chi_in = chi_in[::-1, 0]

    u = np.array([phi_out[-1, 0], chi_out[-1, 0]])
    v = np.array([phi_in[0], chi_in[0]])
    scale = float(np.dot(u, v) / np.dot(v, v))
    mismatch = float(np.linalg.norm(u - scale * v) / np.linalg.norm(u))

    phi_half = np.concatenate([phi_out[:-1, 0], scale * phi_in])[base_mask]
    chi_half = np.concatenate([chi_out[:-1, 0], scale * chi_in])[base_mask]
    phi_right = phi_half[0::2]
    chi_right = chi_half[1::2]

    center = grid.center_index
    phi_sign, chi_sign = (1.0, -1.0) if parity == PARITY_EVEN else (-1.0, 1.0)
    phi = np.empty(grid.n_cells + 1)
    phi[center:] = phi_right
    phi[: center + 1] = phi_sign * phi_right[::-1]
    chi = np.empty(grid.n_cells)
    chi[center:] = chi_right
    chi[:center] = chi_sign * chi_right[::-1]
    return Spinor(phi, chi), mismatch


def _states_from_roots(spec, grid, roots, parity, opts):
    states = []
    for gamma in roots:
        spinor, mismatch = reconstruct_spinor(spec, gamma, parity, grid)
        states.append(
            build_state(gamma, spinor, grid, METHOD_SHOOTING, mismatch, opts, expected_parity=parity)
        )
    return states


def find_states_shooting(spec, grid, opts=None, verbose=False):
    """
    打靶法求 gamma_window 內所有束縛態

    參數:
    - spec: PotentialSpec
    - grid: Grid（n_cells ≥ 8）
    - opts: SolverOptions（mesh_points 為每個宇稱的掃描點數）
    - verbose: 是否列印除錯訊息

    回傳:
    - 依 γ 遞增排序的 BoundState 列表
    """
    opts = opts or SolverOptions()
    check_solver_inputs(spec, grid)
    nodes, _ = shooting_nodes(spec, grid)
    mesh = np.linspace(opts.gamma_window[0], opts.gamma_window[1], opts.mesh_points)
    states = []
    for parity in PARITIES:
        roots = _bisect_roots(spec, mesh, parity, nodes, opts.bisection_tol)
        if verbose:
            print(
                f"[Debug] 打靶法：{parity} 掃描 {opts.mesh_points} 點，找到 {len(roots)} 個根"
            )
        states.extend(_states_from_roots(spec, grid, roots, parity, opts))
    return filter_leaky_states(states, grid, opts, verbose=verbose)


def solve_near(spec, grid, gamma, parity, opts=None, width=5e-3):
    """
    在 γ 附近找同宇稱、最接近的打靶法束縛態（細化用）

    回傳:
    - BoundState 或 None
    """
    check_parity(parity)
    opts = opts or SolverOptions()
    lo = max(gamma - width, -1.0 + 1e-9)
    hi = min(gamma + width, 1.0 - 1e-9)
    local = dataclasses.replace(opts, gamma_window=(lo, hi), mesh_points=64)
    nodes, _ = shooting_nodes(spec, grid)
    mesh = np.linspace(lo, hi, local.mesh_points)
    roots = _bisect_roots(spec, mesh, parity, nodes, local.bisection_tol)
    if not roots:
        return None
    nearest = min(roots, key=lambda r: abs(r - gamma))
    return _states_from_roots(spec, grid, [nearest], parity, local)[0]
