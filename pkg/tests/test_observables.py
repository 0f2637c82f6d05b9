"""
observables 模組測試：期望值、恆等式殘差與認證
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core import Spinor, make_grid, normalize, quadrature
from eigensolver import find_bound_states, refine_state
from eigensolver.hamiltonian import sample_potential
from observables import (
    CHECK_ORDER,
    OVERLAP_IDENTITY,
    abs_first_moment,
    certify,
    identity11_check,
    independence_measure,
    mean_z,
    norm,
    overlap_integral,
    rho_evenness,
    second_moment,
    state_diagnostics,
    variance_z,
)
from oracles import convergence_order
from potentials import PotentialSpec

PARAMETRIC_FAMILIES = [
    PotentialSpec.square_well,
    PotentialSpec.gaussian_well,
    PotentialSpec.poschl_teller,
    PotentialSpec.lorentzian_well,
]

CERTIFICATE_FIELDS = {
    'gamma',
    'norm_residual',
    'mean_z',
    'abs_first_moment',
    'overlap_S',
    'variance',
    'delta_z',
    'strictness_margin',
    'identity13_residual',
    'identity11_residual_phi',
    'identity11_residual_chi',
    'ineq14_satisfied',
    'ineq16_satisfied',
    'discretization_error_estimates',
}


def _gaussian_state(fixture_state, grid, center=0.0, chi_factor=None):
    phi = np.exp(-((grid.phi_points - center) ** 2) / 2)
    if chi_factor is None:
        chi = np.zeros(grid.n_cells)
    else:
        chi = chi_factor * np.exp(-((grid.chi_points - center) ** 2) / 2)
    return fixture_state(normalize(Spinor(phi, chi), grid), grid)


def _odd_partner_state(fixture_state, grid):
    """φ = e^{−z²/2}、χ = 0.45·z·e^{−z²/2}：線性獨立但不是任何位勢的本徵態"""
    phi = np.exp(-grid.phi_points ** 2 / 2)
    chi = 0.45 * grid.chi_points * np.exp(-grid.chi_points ** 2 / 2)
    return fixture_state(normalize(Spinor(phi, chi), grid), grid)


def _with_coarse_level(fixture_state, build, half_width, n_cells):
    """以 n_cells 與 n_cells/2 兩層網格組成可認證的狀態"""
    coarse = build(fixture_state, make_grid(half_width, n_cells // 2))
    fine = build(fixture_state, make_grid(half_width, n_cells))
    return fixture_state(fine.spinor, fine.grid, coarse_state=coarse)


@pytest.fixture(scope='module')
def certified_ground():
    spec = PotentialSpec.square_well(0.5, 2.0)
    state = find_bound_states(spec, make_grid(30, 1200))[0]
    refined = refine_state(state, spec)
    return refined, certify(refined)


# ============================================================
# 期望值
# ============================================================

class TestMoments:
    def test_gaussian_moments(self, fixture_state, gaussian_grid):
        state = _gaussian_state(fixture_state, gaussian_grid)
        assert norm(state) == pytest.approx(1.0, abs=1e-12)
        assert abs(mean_z(state)) <= 1e-14
        assert abs_first_moment(state) == pytest.approx(np.pi ** -0.5, abs=1e-6)
        assert second_moment(state) == pytest.approx(0.5, abs=1e-6)
        assert rho_evenness(state) <= 1e-12

    def test_shifted_gaussian(self, fixture_state, gaussian_grid):
        state = _gaussian_state(fixture_state, gaussian_grid, center=1.0)
        assert mean_z(state) == pytest.approx(1.0, abs=1e-10)
        assert variance_z(state) == pytest.approx(0.5, abs=1e-6)
        assert rho_evenness(state) > 0.1

    def test_zero_lower_component_has_no_overlap(self, fixture_state, gaussian_grid):
        state = _gaussian_state(fixture_state, gaussian_grid)
        assert overlap_integral(state) == 0.0
        assert independence_measure(state) == 0.0

    def test_uniform_variance(self, fixture_state):
        grid = make_grid(4, 8000)
        state = fixture_state(normalize(Spinor(np.ones(8001), np.zeros(8000)), grid), grid)
        assert variance_z(state) == pytest.approx(16.0 / 3.0, abs=1e-2)

    def test_proportional_components_dependent(self, fixture_state, gaussian_grid):
        state = _gaussian_state(fixture_state, gaussian_grid, chi_factor=0.3)
        assert independence_measure(state) == pytest.approx(1.0, abs=1e-12)


class TestIdentity11:
    def test_residual_second_order(self, fixture_state):
        residuals = []
        for n in (200, 400):
            grid = make_grid(10, n)
            state = _gaussian_state(fixture_state, grid, chi_factor=1.0)
            residuals.append(identity11_check(state))
        ratio_phi = residuals[0][0] / residuals[1][0]
        ratio_chi = residuals[0][1] / residuals[1][1]
        assert 3.6 <= ratio_phi <= 4.4
        assert 3.6 <= ratio_chi <= 4.4

    def test_phi_derivative_matches_discrete_equation(self):
        # 離散方程 γχ = ∂φ − (1−f)χ 中的 ∂φ 即 φ 的前向差分
        spec = PotentialSpec.square_well(0.5, 2.0)
        state = find_bound_states(spec, make_grid(30, 1200))[0]
        grid = state.grid
        _, f_chi = sample_potential(spec, grid)
        slope = (state.gamma + 1.0 - f_chi) * state.spinor.chi
        derivative = np.concatenate([slope[:1], 0.5 * (slope[:-1] + slope[1:]), slope[-1:]])
        z = grid.phi_points
        phi = state.spinor.phi
        expected = abs(quadrature(z * phi * derivative, grid) + 0.5 * quadrature(phi ** 2, grid))
        assert identity11_check(state)[0] == pytest.approx(expected, abs=1e-8)

    def test_bound_state_residual_small(self, certified_ground):
        state, _ = certified_ground
        residual_phi, residual_chi = identity11_check(state)
        assert residual_phi < 1e-3 and residual_chi < 1e-3


# ============================================================
# 認證
# ============================================================

class TestCertificate:
    def test_square_well_passes(self, certified_ground):
        _, certificate = certified_ground
        assert certificate.passed, certificate.failed_checks()
        assert certificate.overlap_S == pytest.approx(-OVERLAP_IDENTITY, abs=1e-6)
        assert certificate.delta_z > 0.5
        assert certificate.strictness_margin == pytest.approx(certificate.delta_z - 0.5)
        assert certificate.abs_first_moment >= 0.5
        assert certificate.ineq14_satisfied and certificate.ineq16_satisfied

    def test_check_order(self, certified_ground):
        _, certificate = certified_ground
        assert tuple(certificate.checks) == CHECK_ORDER
        assert certificate.failed_checks() == []

    def test_to_dict_fields(self, certified_ground):
        _, certificate = certified_ground
        record = certificate.to_dict()
        assert set(record) == CERTIFICATE_FIELDS
        assert 'gamma' in record['discretization_error_estimates']
        assert isinstance(record['ineq16_satisfied'], bool)

    def test_chain_of_inequalities(self, certified_ground):
        state, _ = certified_ground
        diagnostics = state_diagnostics(state)
        assert diagnostics['two_abs_first_moment'] >= diagnostics['four_abs_S']
        assert diagnostics['second_moment'] >= diagnostics['abs_first_moment_squared']
        assert diagnostics['independence_measure'] < 1.0 - 1e-6
        assert diagnostics['boundary_leak'] <= 1e-8

    def test_dependent_components_fail(self, fixture_state):
        def build(factory, grid):
            return _gaussian_state(factory, grid, chi_factor=0.3)

        state = _with_coarse_level(fixture_state, build, 10, 400)
        certificate = certify(state)
        assert not certificate.passed
        failed = certificate.failed_checks()
        assert 'identity13' in failed
        assert 'independence' in failed

    def test_unnormalized_rejected(self, fixture_state, gaussian_grid):
        phi = 2.0 * np.exp(-gaussian_grid.phi_points ** 2 / 2)
        state = fixture_state(Spinor(phi, np.zeros(gaussian_grid.n_cells)), gaussian_grid)
        with pytest.raises(ValueError):
            certify(state)

    def test_requires_refinement_level(self, fixture_state):
        state = _odd_partner_state(fixture_state, make_grid(20, 400))
        with pytest.raises(ValueError, match='coarse_state'):
            certify(state)

    def test_non_eigenstate_rejected(self, fixture_state):
        state = _with_coarse_level(fixture_state, _odd_partner_state, 20, 400)
        certificate = certify(state)
        assert not certificate.passed
        assert 'identity13' in certificate.failed_checks()
        assert certificate.identity13_residual > 0.04
        assert certificate.identity13_residual > 10 * certificate.discretization_error_estimates['overlap_S']

    def test_overlap_converges_second_order(self):
        spec = PotentialSpec.poschl_teller(0.8, 1.0)
        samples = []
        for n in (400, 800, 1600):
            state = find_bound_states(spec, make_grid(25, n))[0]
            samples.append(abs(overlap_integral(state)))
        estimate = convergence_order(samples)
        assert estimate.defined
        assert estimate.order >= 1.8

    @pytest.mark.slow
    @pytest.mark.parametrize('flip', [False, True], ids=['well', 'barrier'])
    @pytest.mark.parametrize('factory', PARAMETRIC_FAMILIES, ids=lambda f: f.__name__)
    @settings(max_examples=3, deadline=None)
    @given(depth=st.floats(0.5, 0.9), width=st.floats(1.0, 2.5))
    def test_random_wells_certified(self, factory, flip, depth, width):
        # 8 組族群 × 正負號，每組 3 個隨機參數，至少 24 個束縛態
        if factory == PotentialSpec.square_well:
            width = round(width * 2.0) / 2.0
        spec = factory(depth, width, flip=flip)
        states = find_bound_states(spec, make_grid(40, 1600))
        assert states
        if flip:
            assert states[0].gamma < 0
        for state in states:
            certificate = certify(refine_state(state, spec))
            assert certificate.passed, (spec.describe(), state.gamma, certificate.failed_checks())
            assert certificate.identity13_residual <= 1e-6
            assert abs(certificate.mean_z) <= 1e-9
            assert rho_evenness(state) <= 1e-8
