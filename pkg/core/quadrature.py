"""
數值積分模組
梯形積分，搭配 oracles.convergence 的 Richardson 外插使用
"""

import numpy as np
from scipy.integrate import trapezoid


def quadrature(values, grid):
    """
    在 φ 點上對 [−L, L] 做梯形積分

    參數:
    - values: φ 點上的實數序列（長度 n_cells+1）
    - grid: Grid

    回傳:
    - 積分值（float）
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.n_cells + 1,):
        raise ValueError(
            f"積分序列長度 {values.shape} 與網格 φ 點數 {grid.n_cells + 1} 不符"
        )
    return float(trapezoid(values, dx=grid.h))
