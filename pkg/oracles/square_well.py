"""
方井解析本徵值

井內 (|z| < a) 波數 k = √((γ+V)² − 1)，井外衰減率 κ = √(1 − γ²)，
兩分量在 z = a 連續：
  even_phi:  k(γ+1)·sin(ka) − κ(γ+1+V)·cos(ka) = 0
  odd_phi:   k(γ+1)·cos(ka) + κ(γ+1+V)·sin(ka) = 0
僅在 γ > 1 − V 時井內振盪；以變號掃描加二分法求根。
"""

import numpy as np

from eigensolver.bound_state import PARITY_EVEN, check_parity

SCAN_POINTS = 20000
BISECTION_HALVINGS = 200
EDGE_OFFSET = 1e-13


def matching_function(gamma, depth, half_width, parity):
    """
    方井匹配函數（無極點形式）

    參數:
    - gamma: γ（純量或陣列，需 γ > 1 − V）
    - depth: 井深 V
    - half_width: 半寬 a
    - parity: even_phi 或 odd_phi

    回傳:
    - 匹配函數值
    """
    gamma = np.asarray(gamma, dtype=float)
    k = np.sqrt((gamma + depth) ** 2 - 1.0)
    kappa = np.sqrt((1.0 - gamma) * (1.0 + gamma))
    ka = k * half_width
    if parity == PARITY_EVEN:
        return k * (gamma + 1.0) * np.sin(ka) - kappa * (gamma + 1.0 + depth) * np.cos(ka)
    return k * (gamma + 1.0) * np.cos(ka) + kappa * (gamma + 1.0 + depth) * np.sin(ka)


def square_well_spectrum(depth, half_width, parity):
    """
    方井在能隙內的本徵值

    參數:
    - depth: 井深 V ≥ 0
    - half_width: 半寬 a > 0
    - parity: even_phi 或 odd_phi

    回傳:
    - 遞增排序的 γ 列表（沒有根時為空列表）
    """
    check_parity(parity)
    if depth < 0:
        raise ValueError(f"方井深度必須 ≥ 0: {depth}")
    if half_width <= 0:
        raise ValueError(f"方井半寬必須 > 0: {half_width}")
    if depth == 0:
        return []

    lo = max(-1.0, 1.0 - depth) + EDGE_OFFSET
    hi = 1.0 - EDGE_OFFSET
    if lo >= hi:
        return []
    mesh = np.linspace(lo, hi, SCAN_POINTS + 1)
    values = matching_function(mesh, depth, half_width, parity)
    change = np.flatnonzero(values[:-1] * values[1:] < 0)

    lower = mesh[change]
    upper = mesh[change + 1]
    lower_values = values[change]
    for _ in range(BISECTION_HALVINGS):
        middle = 0.5 * (lower + upper)
        middle_values = matching_function(middle, depth, half_width, parity)
        move_upper = lower_values * middle_values <= 0
        upper = np.where(move_upper, middle, upper)
        lower_values = np.where(move_upper, lower_values, middle_values)
        lower = np.where(move_upper, lower, middle)
    return sorted(float(g) for g in 0.5 * (lower + upper))
