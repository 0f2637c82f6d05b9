"""
核心模組
單位約定、交錯網格、旋量儲存、數值積分與歸一化
"""

from .units import LOCALIZATION_BOUND, SPECTRAL_GAP, decay_rate
from .grid import Grid, make_grid
from .spinor import (
    Spinor,
    DensityProfile,
    interpolate_chi_to_phi,
    density,
    normalize,
    reflect,
)
from .quadrature import quadrature

__all__ = [
    'LOCALIZATION_BOUND',
    'SPECTRAL_GAP',
    'decay_rate',
    'Grid',
    'make_grid',
    'Spinor',
    'DensityProfile',
    'interpolate_chi_to_phi',
    'density',
    'normalize',
    'reflect',
    'quadrature',
]
