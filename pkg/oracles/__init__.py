"""
參考解模組
自由粒子閉式解、方井解析本徵值、稠密交叉檢查、收斂階數與固定表
"""

from .free_space import FreeSpaceSolution, free_space_solution
from .square_well import matching_function, square_well_spectrum
from .dense_check import DENSE_MAX_CELLS, dense_cross_check
from .convergence import OrderEstimate, convergence_order, richardson
from .fixtures import (
    FIXTURE_COLUMNS,
    SUPPORTED_FAMILIES,
    DEFAULT_CASES,
    generate_fixture_table,
    write_fixture_table,
    read_fixture_table,
    diff_fixture_tables,
)

__all__ = [
    'FreeSpaceSolution',
    'free_space_solution',
    'matching_function',
    'square_well_spectrum',
    'DENSE_MAX_CELLS',
    'dense_cross_check',
    'OrderEstimate',
    'convergence_order',
    'richardson',
    'FIXTURE_COLUMNS',
    'SUPPORTED_FAMILIES',
    'DEFAULT_CASES',
    'generate_fixture_table',
    'write_fixture_table',
    'read_fixture_table',
    'diff_fixture_tables',
]
