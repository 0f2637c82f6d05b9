"""
離散 Hamiltonian 組裝模組

交錯網格上
  γφ = −∂χ + (1+f)φ,   γχ = +∂φ − (1−f)χ
以 (Dχ)ᵢ = (χ_{i+1/2} − χ_{i−1/2})/h 離散 ∂χ，−Dᵀ 即為 φ 的前向差分，
H = [[diag(1+f_φ), −D], [−Dᵀ, −diag(1−f_χ)]] 嚴格對稱且沒有倍增模。
"""

import numpy as np
from scipy import sparse

from core import Spinor
from potentials import cell_average


def sample_potential(spec, grid):
    """
    φ 點與 χ 點的位勢取樣

    每個未知量取其控制格（寬 h、以該點為中心）上的平均值；方井邊緣不落在節點上時
    仍維持 O(h²) 收斂。平滑族群的格平均即中點值。

    回傳:
    - (f_phi, f_chi)
    """
    return (
        cell_average(spec, grid.phi_points, grid.h),
        cell_average(spec, grid.chi_points, grid.h),
    )


def difference_operator(grid):
    """交錯差分 D：χ 點 → φ 點，大小 (n_cells+1) × n_cells"""
    n = grid.n_cells
    inv_h = 1.0 / grid.h
    # D[i, i] = +1/h（χ_{i+1/2}），D[i, i−1] = −1/h（χ_{i−1/2}）
    upper = np.full(n, inv_h)
    lower = np.full(n, -inv_h)
    return sparse.diags([upper, lower], [0, -1], shape=(n + 1, n), format='csr')


def assemble_hamiltonian(spec, grid):
    """
    組裝完整的對稱 Hamiltonian（區塊排列：先 φ 後 χ）

    參數:
    - spec: PotentialSpec
    - grid: Grid

    回傳:
    - scipy.sparse.csr_matrix，大小 2·n_cells+1
    """
    f_phi, f_chi = sample_potential(spec, grid)
    D = difference_operator(grid)
    H = sparse.bmat(
        [
            [sparse.diags(1.0 + f_phi), -D],
            [-D.T, sparse.diags(-(1.0 - f_chi))],
        ],
        format='csr',
    )
    return H


def interior_indices(grid):
    """硬牆邊界 φ(±L) = 0：去掉 φ 兩端點後保留的區塊索引"""
    n = grid.n_cells
    return np.concatenate([np.arange(1, n), np.arange(n + 1, 2 * n + 1)])


def hard_wall_hamiltonian(spec, grid):
    """去掉 φ 端點列與行後的約化 Hamiltonian（區塊排列，大小 2·n_cells−1）"""
    keep = interior_indices(grid)
    H = assemble_hamiltonian(spec, grid)
    return H[keep][:, keep].tocsr()


def tridiagonal_form(spec, grid):
    """
    約化 Hamiltonian 的三對角形式

    未知量交錯排列為 χ₀, φ₁, χ₁, φ₂, …, φ_{n−1}, χ_{n−1}；
    非對角元依序為 +1/h（χ_{i−1} 與 φ_i）與 −1/h（φ_i 與 χ_i）。

    回傳:
    - (diagonal, off_diagonal)
    """
    n = grid.n_cells
    f_phi, f_chi = sample_potential(spec, grid)
    diagonal = np.empty(2 * n - 1)
    diagonal[0::2] = -(1.0 - f_chi)
    diagonal[1::2] = 1.0 + f_phi[1:-1]
    off_diagonal = np.empty(2 * n - 2)
    off_diagonal[0::2] = 1.0 / grid.h
    off_diagonal[1::2] = -1.0 / grid.h
    return diagonal, off_diagonal


def tridiagonal_matvec(diagonal, off_diagonal, vector):
    """三對角矩陣乘向量"""
    result = diagonal * vector
    result[:-1] += off_diagonal * vector[1:]
    result[1:] += off_diagonal * vector[:-1]
    return result


def interleaved_to_spinor(vector, grid):
    """交錯排列的約化向量 → Spinor（φ 端點補 0）"""
    n = grid.n_cells
    phi = np.zeros(n + 1)
    phi[1:-1] = vector[1::2]
    chi = np.asarray(vector[0::2], dtype=float)
    return Spinor(phi, chi)
