"""
期望值與恆等式

所有積分都在 φ 點上以梯形法計算，χ 先內插到 φ 點。
函數接受任何帶有 spinor 與 grid 屬性的物件（BoundState）。
"""

import numpy as np

from core import density, interpolate_chi_to_phi, quadrature

# 自洽恆等式 |∫ z φ χ dz| 的精確值
OVERLAP_IDENTITY = 0.25


def _weighted(state, weight):
    rho = density(state.spinor, state.grid).rho
    return float(quadrature(weight * rho, state.grid))


def norm(state):
    """∫ρ dz"""
    return _weighted(state, 1.0)


def mean_z(state):
    """⟨z⟩ = ∫ z ρ dz"""
    return _weighted(state, state.grid.phi_points)


def abs_first_moment(state):
    """∫ |z| ρ dz"""
    return _weighted(state, np.abs(state.grid.phi_points))


def second_moment(state):
    """⟨z²⟩"""
    return _weighted(state, state.grid.phi_points ** 2)


def variance_z(state):
    """⟨z²⟩ − ⟨z⟩²"""
    return second_moment(state) - mean_z(state) ** 2


def overlap_integral(state):
    """帶號的 S = ∫ z φ χ̃ dz（束縛態 |S| = 1/4）"""
    chi_tilde = interpolate_chi_to_phi(state.spinor, state.grid)
    z = state.grid.phi_points
    return float(quadrature(z * state.spinor.phi * chi_tilde, state.grid))


def _phi_derivative(state):
    """φ' 在 φ 點：χ 點上的前向差分 (φ_{i+1} − φ_i)/h 取相鄰平均"""
    forward = np.diff(state.spinor.phi) / state.grid.h
    derivative = np.empty(state.grid.n_cells + 1)
    derivative[1:-1] = 0.5 * (forward[:-1] + forward[1:])
    derivative[0] = forward[0]
    derivative[-1] = forward[-1]
    return derivative


def _chi_derivative(state):
    """χ' 在 φ 點：內部用交錯差分 (χ_{i+1/2} − χ_{i−1/2})/h，兩端取最近的差分"""
    chi = state.spinor.chi
    h = state.grid.h
    derivative = np.empty(state.grid.n_cells + 1)
    derivative[1:-1] = np.diff(chi) / h
    derivative[0] = derivative[1]
    derivative[-1] = derivative[-2]
    return derivative


def identity11_check(state):
    """
    分部積分恆等式 ∫ z u u' dz = −½ ∫ u² dz 的殘差

    φ' 與 χ' 都以交錯差分取在 φ 點上。

    回傳:
    - (residual_phi, residual_chi)
    """
    grid = state.grid
    z = grid.phi_points
    phi = state.spinor.phi
    chi_tilde = interpolate_chi_to_phi(state.spinor, grid)
    phi_derivative = _phi_derivative(state)
    chi_derivative = _chi_derivative(state)
    residual_phi = abs(
        quadrature(z * phi * phi_derivative, grid) + 0.5 * quadrature(phi ** 2, grid)
    )
    residual_chi = abs(
        quadrature(z * chi_tilde * chi_derivative, grid) + 0.5 * quadrature(chi_tilde ** 2, grid)
    )
    return float(residual_phi), float(residual_chi)


def independence_measure(state):
    """|⟨φ, χ̃⟩| / (‖φ‖‖χ̃‖)；線性相依時為 1"""
    grid = state.grid
    phi = state.spinor.phi
    chi_tilde = interpolate_chi_to_phi(state.spinor, grid)
    denominator = np.sqrt(quadrature(phi ** 2, grid) * quadrature(chi_tilde ** 2, grid))
    if denominator == 0.0:
        return 0.0
    return float(abs(quadrature(phi * chi_tilde, grid)) / denominator)


def rho_evenness(state):
    """max|ρ(z) − ρ(−z)| / max ρ"""
    rho = density(state.spinor, state.grid).rho
    peak = float(np.max(rho))
    if peak == 0.0:
        return 0.0
    return float(np.max(np.abs(rho - rho[::-1])) / peak)
