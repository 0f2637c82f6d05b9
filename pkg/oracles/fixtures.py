"""
解析本徵值固定表

純文字表格，每列：family params parity index gamma generated
例如：square_well V=0.5,a=2 even_phi 0 6.3625708846870e-01 2026-10-19
"""

import datetime

import pandas as pd

from eigensolver.bound_state import PARITIES
from .square_well import square_well_spectrum

FIXTURE_COLUMNS = ['family', 'params', 'parity', 'index', 'gamma', 'generated']
SUPPORTED_FAMILIES = ('square_well', 'zero')

# 預設 (V, a)：涵蓋淺井、深井、窄井與 V > 1 的情況
DEFAULT_CASES = ((0.3, 3.0), (0.5, 2.0), (0.8, 4.0), (0.9, 1.0), (1.5, 1.0))

# 固定表 γ 以 14 位有效數字儲存
GAMMA_FORMAT = '%.13e'
DIFF_TOL = 1e-11


def format_params(depth, half_width):
    return f"V={depth:g},a={half_width:g}"


def generate_fixture_table(family, cases=DEFAULT_CASES, generated=None, verbose=False):
    """
    產生解析本徵值表

    參數:
    - family: square_well 或 zero
    - cases: [(V, a), ...]
    - generated: 產生日期字串（預設今天）
    - verbose: 是否列印每個案例的根數

    回傳:
    - pandas.DataFrame（欄位 FIXTURE_COLUMNS；zero 族群為空表）
    """
    if family not in SUPPORTED_FAMILIES:
        raise ValueError(f"解析固定表只支援 {SUPPORTED_FAMILIES}，不支援 {family}")
    generated = generated or datetime.date.today().isoformat()
    rows = []
    if family == 'square_well':
        for depth, half_width in cases:
            for parity in PARITIES:
                roots = square_well_spectrum(depth, half_width, parity)
                if verbose:
                    print(f"[Debug] V={depth:g}, a={half_width:g}, {parity}: {len(roots)} 個根")
                for index, gamma in enumerate(roots):
                    rows.append({
                        'family': family,
                        'params': format_params(depth, half_width),
                        'parity': parity,
                        'index': index,
                        'gamma': gamma,
                        'generated': generated,
                    })
    return pd.DataFrame(rows, columns=FIXTURE_COLUMNS).astype({'index': 'int64', 'gamma': 'float64'})


def write_fixture_table(table, path):
    """寫出固定表（首行為 # 欄位說明）"""
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write('# ' + ' '.join(FIXTURE_COLUMNS) + '\n')
        if len(table):
            table.to_csv(
                handle,
                sep=' ',
                index=False,
                header=False,
                float_format=GAMMA_FORMAT,
                lineterminator='\n',
            )


def read_fixture_table(path):
    """讀取固定表；只有註解列時回傳空表"""
    try:
        table = pd.read_csv(
            path,
            sep=r'\s+',
            comment='#',
            header=None,
            names=FIXTURE_COLUMNS,
            dtype={'family': str, 'params': str, 'parity': str, 'index': int,
                   'gamma': float, 'generated': str},
        )
    except pd.errors.EmptyDataError:
        return pd.DataFrame(columns=FIXTURE_COLUMNS)
    return table


def diff_fixture_tables(committed, regenerated, tol=DIFF_TOL):
    """
    比對兩個固定表（忽略產生日期）

    回傳:
    - 差異列的 DataFrame（空表代表零差異），status 為 missing / added / changed
    """
    keys = ['family', 'params', 'parity', 'index']
    merged = pd.merge(
        committed[keys + ['gamma']],
        regenerated[keys + ['gamma']],
        on=keys,
        how='outer',
        suffixes=('_committed', '_regenerated'),
        indicator=True,
    )
    merged['status'] = merged['_merge'].map(
        {'left_only': 'missing', 'right_only': 'added', 'both': 'same'}
    ).astype(str)
    changed = (merged['_merge'] == 'both') & (
        (merged['gamma_committed'] - merged['gamma_regenerated']).abs() > tol
    )
    merged.loc[changed, 'status'] = 'changed'
    differences = merged[merged['status'] != 'same'].drop(columns=['_merge'])
    return differences.reset_index(drop=True)
