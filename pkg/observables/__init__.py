"""
觀測量模組
期望值、恆等式殘差與逐態局域化認證
"""

from .moments import (
    OVERLAP_IDENTITY,
    norm,
    mean_z,
    abs_first_moment,
    second_moment,
    variance_z,
    overlap_integral,
    identity11_check,
    independence_measure,
    rho_evenness,
)
from .certificate import CHECK_ORDER, Certificate, certify, state_diagnostics

__all__ = [
    'OVERLAP_IDENTITY',
    'norm',
    'mean_z',
    'abs_first_moment',
    'second_moment',
    'variance_z',
    'overlap_integral',
    'identity11_check',
    'independence_measure',
    'rho_evenness',
    'CHECK_ORDER',
    'Certificate',
    'certify',
    'state_diagnostics',
]
