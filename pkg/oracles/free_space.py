"""
自由粒子（f ≡ 0）閉式解

even_phi: φ = cosh(κz),            χ = κ·sinh(κz)/(γ+1)
odd_phi:  φ = (γ+1)·sinh(κz)/κ,    χ = cosh(κz)
兩支在 z = 0 的值與打靶法的宇稱初值一致，且都隨 |z| 指數成長，
因此自由粒子在能隙內沒有束縛態。
"""

from dataclasses import dataclass

import numpy as np

from core import decay_rate
from eigensolver.bound_state import PARITY_EVEN, check_parity


@dataclass(frozen=True)
class FreeSpaceSolution:
    """可呼叫的閉式解 z → (φ(z), χ(z))"""

    gamma: float
    parity: str

    @property
    def kappa(self):
        return decay_rate(self.gamma)

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        kappa = self.kappa
        if self.parity == PARITY_EVEN:
            return np.cosh(kappa * z), kappa * np.sinh(kappa * z) / (self.gamma + 1.0)
        return (self.gamma + 1.0) * np.sinh(kappa * z) / kappa, np.cosh(kappa * z)


def free_space_solution(gamma, parity):
    """
    建立自由粒子閉式解

    參數:
    - gamma: |γ| < 1
    - parity: even_phi 或 odd_phi

    回傳:
    - FreeSpaceSolution
    """
    check_parity(parity)
    decay_rate(gamma)
    return FreeSpaceSolution(float(gamma), parity)
