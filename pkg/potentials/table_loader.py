"""
表列位勢讀寫模組
兩欄純文字格式：每行以空白分隔的 "z f"，'#' 開頭為註解，z 嚴格遞增
"""

import os

import numpy as np
import pandas as pd

from .potential_spec import PotentialSpec


def load_tabulated_potential(path, symmetrize=False):
    """
    讀取兩欄位勢表

    參數:
    - path: 檔案路徑
    - symmetrize: 是否在載入時對稱化（偏差記錄於 spec.asymmetry）

    回傳:
    - PotentialSpec（tabulated）
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"找不到位勢表: {path}")
    try:
        df = pd.read_csv(path, sep=r'\s+', comment='#', header=None, names=['z', 'f'])
    except pd.errors.EmptyDataError:
        raise ValueError(f"位勢表沒有資料: {path}")
    if df.isna().any().any():
        raise ValueError(f"位勢表每行需要恰好兩欄: {path}")
    return PotentialSpec.tabulated(
        df['z'].to_numpy(dtype=float),
        df['f'].to_numpy(dtype=float),
        symmetrize=symmetrize,
    )


def save_tabulated_potential(z_values, f_values, path, header=None):
    """
    以兩欄格式寫出位勢表

    參數:
    - z_values: 嚴格遞增的 z 節點
    - f_values: 對應的 f 值
    - path: 輸出路徑
    - header: 註解行（可選，會加上 '# '）
    """
    z_values = np.asarray(z_values, dtype=float)
    f_values = np.asarray(f_values, dtype=float)
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        if header:
            for line in str(header).splitlines():
                f.write(f"# {line}\n")
        for z, value in zip(z_values, f_values):
            f.write(f"{float(z)!r} {float(value)!r}\n")
