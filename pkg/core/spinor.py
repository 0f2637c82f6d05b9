"""
旋量模組
實數雙分量旋量 (φ, χ) 的儲存、內插、密度與歸一化
"""

from dataclasses import dataclass

import numpy as np

from .quadrature import quadrature


def _as_real_array(values, name):
    """轉為唯讀 float 陣列，並檢查實數且有限"""
    if np.iscomplexobj(values):
        raise ValueError(f"{name} 必須為實數序列（束縛態旋量取實數）")
    array = np.array(values, dtype=float)
    if array.ndim != 1:
        raise ValueError(f"{name} 必須為一維序列: shape={array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} 含有非有限值")
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Spinor:
    """
    旋量 (φ, χ)

    - phi: φ 點上的值（長度 n_cells+1）
    - chi: χ 點上的值（長度 n_cells）
    """

    phi: np.ndarray
    chi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'phi', _as_real_array(self.phi, 'phi'))
        object.__setattr__(self, 'chi', _as_real_array(self.chi, 'chi'))

    def scaled(self, factor):
        """回傳乘上常數後的新旋量"""
        return Spinor(self.phi * factor, self.chi * factor)

    def check_grid(self, grid):
        """檢查長度與網格一致"""
        if self.phi.shape[0] != grid.n_cells + 1 or self.chi.shape[0] != grid.n_cells:
            raise ValueError(
                f"旋量長度 (phi={self.phi.shape[0]}, chi={self.chi.shape[0]}) "
                f"與網格 n_cells={grid.n_cells} 不符"
            )


@dataclass(frozen=True, eq=False)
class DensityProfile:
    """φ 點上的機率密度 ρ = φ² + χ̃²"""

    rho: np.ndarray


def interpolate_chi_to_phi(spinor, grid):
    """
    將 χ 由半整數點內插到 φ 點

    內部點取兩點平均 χ̃ᵢ = (χ_{i−1/2} + χ_{i+1/2})/2，兩端點直接沿用最近的 χ。

    參數:
    - spinor: Spinor
    - grid: Grid

    回傳:
    - φ 點上的 χ̃（ndarray）
    """
    spinor.check_grid(grid)
    chi = spinor.chi
    chi_tilde = np.empty(grid.n_cells + 1, dtype=float)
    chi_tilde[1:-1] = 0.5 * (chi[:-1] + chi[1:])
    chi_tilde[0] = chi[0]
    chi_tilde[-1] = chi[-1]
    return chi_tilde


def density(spinor, grid):
    """計算 φ 點上的密度 ρ(z) = φ² + χ̃²"""
    chi_tilde = interpolate_chi_to_phi(spinor, grid)
    return DensityProfile(rho=spinor.phi ** 2 + chi_tilde ** 2)


def normalize(spinor, grid):
    """
    歸一化旋量使 ∫(φ² + χ̃²) dz = 1

    參數:
    - spinor: Spinor
    - grid: Grid

    回傳:
    - 方向不變、乘上正常數後的 Spinor
    """
    norm = quadrature(density(spinor, grid).rho, grid)
    if not np.isfinite(norm) or norm <= 0.0:
        raise ValueError("無法歸一化：旋量範數為零")
    return spinor.scaled(1.0 / np.sqrt(norm))


def reflect(spinor):
    """宇稱映射 (φ(z), χ(z)) → (φ(−z), −χ(−z))"""
    return Spinor(spinor.phi[::-1], -spinor.chi[::-1])
