"""
結果輸出模組
逐態 JSON、摘要表、掃描 CSV、失敗紀錄與自洽迭代軌跡
"""

import json
import os

import numpy as np
import pandas as pd

SWEEP_COLUMNS = [
    'param',
    'value',
    'state_index',
    'gamma',
    'delta_z',
    'abs_S',
    'abs_first_moment',
    'pass',
    'err_gamma',
    'err_delta_z',
]
FAILURE_COLUMNS = ['param', 'value', 'error']
TRACE_COLUMNS = ['n', 'gamma', 'delta_W']
FLOAT_FORMAT = '%.12g'


def _ensure_dir(path):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)


def state_record(state, certificate, spec, diagnostics):
    """
    組合單一束縛態的 JSON 紀錄（含旋量陣列，可由外部工具重新驗證）

    參數:
    - state: 細化後的 BoundState
    - certificate: Certificate
    - spec: PotentialSpec
    - diagnostics: state_diagnostics 的輸出

    回傳:
    - dict
    """
    grid = state.grid
    return {
        'gamma': float(state.gamma),
        'gamma_error': None if state.gamma_error is None else float(state.gamma_error),
        'parity': state.parity,
        'method': state.method,
        'potential': spec.describe(),
        'grid': {
            'half_width': float(grid.half_width),
            'n_cells': int(grid.n_cells),
            'h': float(grid.h),
        },
        'residual': float(state.residual),
        'boundary_leak': float(state.boundary_leak),
        'refinement_history': [[int(n), float(g)] for n, g in state.refinement_history],
        'monotone_convergence': state.monotone_convergence,
        'phi_points': grid.phi_points.tolist(),
        'chi_points': grid.chi_points.tolist(),
        'phi': state.spinor.phi.tolist(),
        'chi': state.spinor.chi.tolist(),
        'certificate': certificate.to_dict(),
        'checks': dict(certificate.checks),
        'passed': bool(certificate.passed),
        'diagnostics': {k: float(v) for k, v in diagnostics.items()},
    }


def write_json(record, path):
    _ensure_dir(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(record, f, ensure_ascii=False, indent=2)
        f.write('\n')


def summary_table(records):
    """逐態摘要（列印用）"""
    rows = []
    for index, record in enumerate(records):
        certificate = record['certificate']
        errors = certificate['discretization_error_estimates']
        rows.append({
            'index': index,
            'parity': record['parity'],
            'gamma': f"{record['gamma']:.10f}",
            'delta_z': f"{certificate['delta_z']:.6f}",
            '|S|': f"{abs(certificate['overlap_S']):.6f} ± {errors['overlap_S']:.1e}",
            'status': 'PASS' if record['passed'] else 'FAIL',
        })
    return pd.DataFrame(rows)


def _pass_text(value):
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return ''
    return 'true' if value else 'false'


def write_sweep_csv(rows, path):
    """
    寫出掃描 CSV（欄位固定為 SWEEP_COLUMNS，utf-8 無 BOM）

    參數:
    - rows: SweepRow.as_dict() 的列表（已排序）
    - path: 輸出路徑
    """
    _ensure_dir(path)
    df = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    df['pass'] = df['pass'].map(_pass_text)
    df['state_index'] = df['state_index'].astype(int)
    df.to_csv(
        path,
        index=False,
        float_format=FLOAT_FORMAT,
        encoding='utf-8',
        lineterminator='\n',
    )


def write_failures_csv(failures, path):
    _ensure_dir(path)
    df = pd.DataFrame(failures, columns=FAILURE_COLUMNS)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT, encoding='utf-8', lineterminator='\n')


def write_trace_csv(trace, path):
    """自洽迭代軌跡 (n, γ_n, ‖ΔW‖∞)"""
    _ensure_dir(path)
    df = pd.DataFrame([tuple(entry) for entry in trace], columns=TRACE_COLUMNS)
    df.to_csv(path, index=False, float_format='%.15g', encoding='utf-8', lineterminator='\n')
