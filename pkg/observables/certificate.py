"""
束縛態局域化認證

依序檢查：歸一化、⟨z⟩ = 0、|S| = 1/4、∫|z|ρ ≥ 1/2、Δz > 1/2、分部積分恆等式，
以及兩個鏈式不等式與分量線性獨立。容許誤差由細化層間的離散誤差估計決定。
"""

from dataclasses import dataclass, field, fields

import numpy as np

from core import LOCALIZATION_BOUND
from .moments import (
    OVERLAP_IDENTITY,
    abs_first_moment,
    identity11_check,
    independence_measure,
    mean_z,
    norm,
    overlap_integral,
    rho_evenness,
    second_moment,
)

NORM_TOL = 1e-10
# 超過此值視為未歸一化的輸入
UNNORMALIZED_TOL = 1e-6
TOLERANCE_FLOOR = 1e-8
TOLERANCE_FACTOR = 10.0
INDEPENDENCE_LIMIT = 1.0 - 1e-6
CHAIN_SLACK = 1e-14

CHECK_ORDER = (
    'norm',
    'mean_z',
    'identity13',
    'ineq14',
    'ineq16',
    'identity11',
    'chain_arithmetic_mean',
    'chain_schwarz',
    'independence',
)


@dataclass
class Certificate:
    """
    單一束縛態的認證紀錄

    to_dict() 只輸出認證欄位；checks（各項結果）與 passed（總結）另外保存。
    """

    gamma: float
    norm_residual: float
    mean_z: float
    abs_first_moment: float
    overlap_S: float
    variance: float
    delta_z: float
    strictness_margin: float
    identity13_residual: float
    identity11_residual_phi: float
    identity11_residual_chi: float
    ineq14_satisfied: bool
    ineq16_satisfied: bool
    discretization_error_estimates: dict
    checks: dict = field(default_factory=dict, repr=False)
    passed: bool = False

    def to_dict(self):
        """序列化為 JSON 物件（恰為認證欄位）"""
        record = {}
        for item in fields(self):
            if item.name in ('checks', 'passed'):
                continue
            value = getattr(self, item.name)
            if isinstance(value, dict):
                value = {k: float(v) for k, v in value.items()}
            elif isinstance(value, (bool, np.bool_)):
                value = bool(value)
            else:
                value = float(value)
            record[item.name] = value
        return record

    def failed_checks(self):
        return [name for name in CHECK_ORDER if not self.checks.get(name, False)]


def _raw_quantities(state):
    """單一網格上的原始量"""
    residual_phi, residual_chi = identity11_check(state)
    first = abs_first_moment(state)
    second = second_moment(state)
    mean = mean_z(state)
    variance = second - mean ** 2
    return {
        'norm': norm(state),
        'mean_z': mean,
        'abs_first_moment': first,
        'overlap_S': overlap_integral(state),
        'second_moment': second,
        'variance': variance,
        'delta_z': float(np.sqrt(max(variance, 0.0))),
        'identity11_residual_phi': residual_phi,
        'identity11_residual_chi': residual_chi,
    }


EXTRAPOLATED = (
    'mean_z',
    'abs_first_moment',
    'overlap_S',
    'variance',
    'delta_z',
    'identity11_residual_phi',
    'identity11_residual_chi',
)


def _extrapolate(fine, coarse):
    """
    O(h²) Richardson 外插與誤差估計 |q_f − q_c|/3

    回傳:
    - (values, errors)
    """
    values = {}
    errors = {}
    for name in EXTRAPOLATED:
        delta = fine[name] - coarse[name]
        values[name] = fine[name] + delta / 3.0
        errors[name] = abs(delta) / 3.0
    # 殘差為非負量
    for name in ('identity11_residual_phi', 'identity11_residual_chi'):
        values[name] = abs(values[name])
    return values, errors


def _tolerance(error):
    return max(TOLERANCE_FLOOR, TOLERANCE_FACTOR * error)


def state_diagnostics(state):
    """認證以外的逐態診斷量"""
    raw = _raw_quantities(state)
    return {
        'independence_measure': independence_measure(state),
        'rho_evenness': rho_evenness(state),
        'two_abs_first_moment': 2.0 * raw['abs_first_moment'],
        'four_abs_S': 4.0 * abs(raw['overlap_S']),
        'second_moment': raw['second_moment'],
        'abs_first_moment_squared': raw['abs_first_moment'] ** 2,
        'boundary_leak': float(state.boundary_leak),
        'residual': float(state.residual),
        'parity_overlap': float(state.parity_overlap),
    }


def certify(state, verbose=False):
    """
    認證束縛態滿足整條不等式鏈

    參數:
    - state: 歸一化的 BoundState（通常為 refine_state 的輸出）
    - verbose: 是否列印各項檢查

    回傳:
    - Certificate
    """
    fine = _raw_quantities(state)
    norm_residual = abs(fine['norm'] - 1.0)
    if norm_residual > UNNORMALIZED_TOL:
        raise ValueError(f"認證需要歸一化的狀態：|∫ρ − 1| = {norm_residual:.3e}")

    if getattr(state, 'coarse_state', None) is None:
        raise ValueError("認證需要至少一層細化（coarse_state 為空；請以 n_refine ≥ 1 執行 refine_state）")
    coarse = _raw_quantities(state.coarse_state)
    values, errors = _extrapolate(fine, coarse)
    errors['gamma'] = float(state.gamma_error) if state.gamma_error is not None else float('inf')

    identity13_residual = abs(abs(values['overlap_S']) - OVERLAP_IDENTITY)
    strictness_margin = values['delta_z'] - LOCALIZATION_BOUND
    independence = independence_measure(state)

    checks = {
        'norm': norm_residual <= NORM_TOL,
        'mean_z': abs(values['mean_z']) <= _tolerance(errors['mean_z']),
        'identity13': identity13_residual <= _tolerance(errors['overlap_S']),
        'ineq14': values['abs_first_moment'] >= LOCALIZATION_BOUND - _tolerance(errors['abs_first_moment']),
        'ineq16': strictness_margin > errors['delta_z'],
        'identity11': (
            values['identity11_residual_phi'] <= _tolerance(errors['identity11_residual_phi'])
            and values['identity11_residual_chi'] <= _tolerance(errors['identity11_residual_chi'])
        ),
        'chain_arithmetic_mean': (
            2.0 * fine['abs_first_moment'] >= 4.0 * abs(fine['overlap_S']) - CHAIN_SLACK
        ),
        'chain_schwarz': fine['second_moment'] >= fine['abs_first_moment'] ** 2 - CHAIN_SLACK,
        'independence': independence < INDEPENDENCE_LIMIT,
    }
    checks = {name: bool(checks[name]) for name in CHECK_ORDER}
    passed = all(checks.values())

    certificate = Certificate(
        gamma=float(state.gamma),
        norm_residual=float(norm_residual),
        mean_z=float(values['mean_z']),
        abs_first_moment=float(values['abs_first_moment']),
        overlap_S=float(values['overlap_S']),
        variance=float(values['variance']),
        delta_z=float(values['delta_z']),
        strictness_margin=float(strictness_margin),
        identity13_residual=float(identity13_residual),
        identity11_residual_phi=float(values['identity11_residual_phi']),
        identity11_residual_chi=float(values['identity11_residual_chi']),
        ineq14_satisfied=checks['ineq14'],
        ineq16_satisfied=checks['ineq16'],
        discretization_error_estimates={k: float(v) for k, v in errors.items()},
        checks=checks,
        passed=passed,
    )
    if verbose:
        status = 'PASS' if passed else f"FAIL {certificate.failed_checks()}"
        print(
            f"[Debug] 認證 γ={state.gamma:.10f}: |S|={abs(certificate.overlap_S):.8f} "
            f"Δz={certificate.delta_z:.8f} {status}"
        )
    return certificate
