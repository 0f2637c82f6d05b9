"""
非線性模組
密度相依位勢的自洽固定點求解與固定點認證
"""

from .self_consistent import (
    NonlinearOptions,
    TraceEntry,
    SelfConsistentResult,
    NoBoundStateError,
    SelfConsistencyError,
    effective_spec,
    initial_profile,
    solve_self_consistent,
    certify_fixed_point,
)

__all__ = [
    'NonlinearOptions',
    'TraceEntry',
    'SelfConsistentResult',
    'NoBoundStateError',
    'SelfConsistencyError',
    'effective_spec',
    'initial_profile',
    'solve_self_consistent',
    'certify_fixed_point',
]
