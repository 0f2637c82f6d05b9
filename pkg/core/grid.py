"""
交錯網格模組
φ 放在整數點 −L, −L+h, …, L；χ 放在半整數點 −L+h/2, …, L−h/2
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class Grid:
    """有限計算盒 [−L, L] 上的交錯網格"""

    half_width: float
    n_cells: int

    @property
    def h(self):
        """格距 h = 2L/n_cells"""
        return 2.0 * self.half_width / self.n_cells

    @cached_property
    def phi_points(self):
        """φ 取樣點（n_cells+1 個），z = 0 位於中央"""
        offsets = np.arange(self.n_cells + 1, dtype=float) - self.n_cells // 2
        points = self.h * offsets
        # 端點固定為 ±L，避免 h·n/2 的捨入誤差
        points[0] = -self.half_width
        points[-1] = self.half_width
        points.flags.writeable = False
        return points

    @cached_property
    def chi_points(self):
        """χ 取樣點（n_cells 個半整數點）"""
        offsets = np.arange(self.n_cells, dtype=float) - self.n_cells // 2 + 0.5
        points = self.h * offsets
        points.flags.writeable = False
        return points

    @property
    def center_index(self):
        """z = 0 在 phi_points 中的索引"""
        return self.n_cells // 2

    def refined(self, factor=2):
        """回傳格距縮小 factor 倍的同尺寸網格"""
        return make_grid(self.half_width, self.n_cells * factor)


def make_grid(L, n_cells):
    """
    建立交錯網格

    參數:
    - L: 半寬（Compton 長度，> 0）
    - n_cells: 格數（正偶數，使 z = 0 為 φ 點）

    回傳:
    - Grid
    """
    if isinstance(n_cells, bool) or int(n_cells) != n_cells:
        raise ValueError(f"n_cells 必須為整數: {n_cells}")
    n_cells = int(n_cells)
    if n_cells < 2 or n_cells % 2 != 0:
        raise ValueError(f"n_cells 必須為正偶數: {n_cells}")
    L = float(L)
    if not np.isfinite(L) or L <= 0:
        raise ValueError(f"半寬 L 必須為正數: {L}")
    return Grid(half_width=L, n_cells=n_cells)
