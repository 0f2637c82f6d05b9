"""
束縛態資料型別
本徵對 (γ, Ψ)、求解選項、打靶殘差與求解失敗的例外
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from core import SPECTRAL_GAP

PARITY_EVEN = 'even_phi'
PARITY_ODD = 'odd_phi'
PARITIES = (PARITY_EVEN, PARITY_ODD)

METHOD_MATRIX = 'matrix'
METHOD_SHOOTING = 'shooting'
METHODS = (METHOD_MATRIX, METHOD_SHOOTING)

# 求解器所需的最小格數
MIN_SOLVER_CELLS = 8


def check_parity(parity):
    """檢查宇稱標籤"""
    if parity not in PARITIES:
        raise ValueError(f"未知的宇稱標籤: {parity}（可用 {PARITIES}）")
    return parity


@dataclass(frozen=True)
class SolverOptions:
    """
    求解選項

    - gamma_window: 搜尋區間，需在 (−1, 1) 內
    - n_refine: 網格加倍次數（refine_state 使用）
    - bisection_tol: 打靶二分法的 γ 容許誤差
    - max_states: 最多回傳的束縛態數
    - mesh_points: 打靶法每個宇稱的 γ 掃描點數
    - leak_tol: 邊界洩漏門檻（ρ(±L)/max ρ）
    - residual_tol: 本徵方程殘差門檻
    - parity_tol: 宇稱重疊偏離 ±1 的門檻
    """

    gamma_window: tuple = (-0.999, 0.999)
    n_refine: int = 2
    bisection_tol: float = 1e-12
    max_states: int = 50
    mesh_points: int = 2000
    leak_tol: float = 1e-8
    residual_tol: float = 1e-9
    parity_tol: float = 1e-9

    def __post_init__(self):
        lo, hi = (float(v) for v in self.gamma_window)
        object.__setattr__(self, 'gamma_window', (lo, hi))
        if not (SPECTRAL_GAP[0] < lo < hi < SPECTRAL_GAP[1]):
            raise ValueError(f"gamma_window 必須是 (-1, 1) 內的區間: {self.gamma_window}")
        if self.n_refine < 0:
            raise ValueError(f"n_refine 不可為負: {self.n_refine}")
        if self.bisection_tol <= 0:
            raise ValueError(f"bisection_tol 必須 > 0: {self.bisection_tol}")
        if self.max_states < 1:
            raise ValueError(f"max_states 必須 ≥ 1: {self.max_states}")
        if self.mesh_points < 2:
            raise ValueError(f"mesh_points 必須 ≥ 2: {self.mesh_points}")


@dataclass(frozen=True)
class MatchResidual:
    """
    打靶殘差 F(γ) = χ(L) + κ·φ(L)/(γ+1)

    value 為重新縮放後的值，真實值為 value·exp(log_scale)；縮放不改變正負號。
    """

    gamma: float
    value: float
    parity: str
    diverged: bool = False
    log_scale: float = 0.0


@dataclass(frozen=True, eq=False)
class BoundState:
    """
    束縛態

    - gamma: 本徵值 γ = E/m₀c²（細化後為 Richardson 外插值）
    - spinor: 歸一化旋量
    - parity: even_phi 或 odd_phi
    - method: matrix 或 shooting
    - residual: 離散本徵方程殘差（打靶法為接合點相對失配）
    - grid: 所在網格
    - boundary_leak: ρ(±L)/max ρ
    - gamma_error: 細化後的 γ 誤差估計
    - parity_overlap: ⟨Ψ, RΨ⟩/⟨Ψ, Ψ⟩
    - coarse_state: 細化時上一層網格的狀態（認證用於估計離散誤差）
    - refinement_history: ((n_cells, γ), ...)
    - monotone_convergence: 細化序列是否單調收斂（None 表示無法判斷）
    """

    gamma: float
    spinor: object
    parity: str
    method: str
    residual: float
    grid: object
    boundary_leak: float
    gamma_error: Optional[float] = None
    parity_overlap: float = 1.0
    coarse_state: Optional['BoundState'] = None
    refinement_history: tuple = ()
    monotone_convergence: Optional[bool] = None

    @property
    def kappa(self):
        """尾端衰減率 √(1 − γ²)"""
        return float(np.sqrt(max(0.0, 1.0 - self.gamma ** 2)))


class BoxTooSmallError(RuntimeError):
    """所有候選態的邊界洩漏都超過門檻：計算盒太小"""

    def __init__(self, gammas, leaks, half_width, leak_tol):
        self.gammas = tuple(float(g) for g in gammas)
        self.leaks = tuple(float(v) for v in leaks)
        self.half_width = half_width
        self.leak_tol = leak_tol
        detail = ', '.join(f"γ={g:.6f} leak={v:.1e}" for g, v in zip(self.gammas, self.leaks))
        super().__init__(
            f"計算盒 L={half_width:g} 太小：所有候選態的邊界洩漏超過 {leak_tol:.0e}"
            f"（{detail}）。請加大 L。"
        )
