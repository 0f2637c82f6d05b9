"""
單位約定
所有長度以 Compton 長度 λ_C = ħ/m₀c 為單位，能量以 m₀c² 為單位，
位勢以 f(z) = U(z)/m₀c² 表示。模組內所有公開數值皆為無因次量。
"""

import numpy as np

# 長度單位（λ_C）與能量單位（m₀c²）
COMPTON_LENGTH = 1.0
REST_ENERGY = 1.0

# 能隙 (−m₀c², +m₀c²) 的無因次端點
SPECTRAL_GAP = (-REST_ENERGY, REST_ENERGY)

# 局域化下限 Δz > λ_C/2
LOCALIZATION_BOUND = 0.5 * COMPTON_LENGTH


def decay_rate(gamma):
    """
    自由區域的衰減率 κ = √(1 − γ²)

    參數:
    - gamma: 本徵值 γ = E/m₀c²（純量或陣列），需位於能隙內

    回傳:
    - κ（與 gamma 同形狀）
    """
    gamma = np.asarray(gamma, dtype=float)
    if np.any(np.abs(gamma) >= REST_ENERGY):
        raise ValueError(f"γ 必須位於能隙 (-1, 1) 內: {gamma}")
    kappa = np.sqrt((REST_ENERGY - gamma) * (REST_ENERGY + gamma))
    return float(kappa) if kappa.ndim == 0 else kappa
