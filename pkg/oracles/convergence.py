"""
收斂階數與 Richardson 外插
"""

from typing import NamedTuple

import numpy as np


class OrderEstimate(NamedTuple):
    """order 為觀測階數；差分非單調時 defined 為 False、order 為 nan"""

    order: float
    defined: bool


def convergence_order(samples):
    """
    由 h、h/2、h/4 三個樣本估計收斂階數 log₂(|q_h − q_{h/2}| / |q_{h/2} − q_{h/4}|)

    參數:
    - samples: (q_h, q_{h/2}, q_{h/4})

    回傳:
    - OrderEstimate
    """
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (3,):
        raise ValueError(f"需要恰好三個樣本（h, h/2, h/4）: {samples.shape}")
    first = samples[0] - samples[1]
    second = samples[1] - samples[2]
    if first == 0.0 or second == 0.0 or np.sign(first) != np.sign(second):
        return OrderEstimate(float('nan'), False)
    if abs(second) >= abs(first):
        return OrderEstimate(float('nan'), False)
    return OrderEstimate(float(np.log2(abs(first) / abs(second))), True)


def richardson(q_coarse, q_fine, order=2):
    """以格距比 2 的兩層樣本做 Richardson 外插"""
    if order <= 0:
        raise ValueError(f"order 必須 > 0: {order}")
    return q_fine + (q_fine - q_coarse) / (2.0 ** order - 1.0)
