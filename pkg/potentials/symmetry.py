"""
位勢對稱性檢查模組
證明要求 f(z) = f(−z)；在網格的 φ 點與 χ 點上逐點比對
"""

from dataclasses import dataclass

import numpy as np

from .potential_spec import eval_potential

SYMMETRY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SymmetryReport:
    """
    對稱性檢查結果

    - ok: 是否通過（max_violation ≤ tolerance）
    - max_violation: max |f(z) − f(−z)|
    - location: 最大偏差發生的位置（取 z ≥ 0 的一側）
    - tolerance: 1e-12 × (1 + max|f|)
    - pre_symmetrization_deviation: 表列位勢對稱化前的偏差（其餘為 0）
    """

    ok: bool
    max_violation: float
    location: float
    tolerance: float
    pre_symmetrization_deviation: float = 0.0

    def describe(self):
        """列印用的摘要"""
        status = 'OK' if self.ok else 'VIOLATION'
        return (
            f"{status}: max|f(z)−f(−z)| = {self.max_violation:.3e} "
            f"於 z = {self.location:g}（容許 {self.tolerance:.1e}）"
        )


def validate_symmetry(spec, grid):
    """
    檢查位勢在網格上的對稱性

    參數:
    - spec: PotentialSpec
    - grid: Grid

    回傳:
    - SymmetryReport（不拋出例外）
    """
    z = np.concatenate([grid.phi_points, grid.chi_points])
    f_plus = eval_potential(spec, z)
    f_minus = eval_potential(spec, -z)
    violation = np.abs(f_plus - f_minus)
    index = int(np.argmax(violation))
    max_violation = float(violation[index])
    tolerance = SYMMETRY_TOLERANCE * (1.0 + float(np.max(np.abs(f_plus))))
    return SymmetryReport(
        ok=max_violation <= tolerance,
        max_violation=max_violation,
        location=float(abs(z[index])),
        tolerance=tolerance,
        pre_symmetrization_deviation=float(spec.asymmetry),
    )
