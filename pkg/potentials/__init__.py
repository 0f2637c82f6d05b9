"""
位勢模組
有限對稱純量位勢的族群、求值、對稱檢查與表列讀寫
"""

from .potential_spec import (
    FAMILY_PARAMETERS,
    PotentialSpec,
    eval_potential,
    cell_average,
    z_tail,
    breakpoints,
)
from .symmetry import SymmetryReport, validate_symmetry
from .table_loader import load_tabulated_potential, save_tabulated_potential

__all__ = [
    'FAMILY_PARAMETERS',
    'PotentialSpec',
    'eval_potential',
    'cell_average',
    'z_tail',
    'breakpoints',
    'SymmetryReport',
    'validate_symmetry',
    'load_tabulated_potential',
    'save_tabulated_potential',
]
