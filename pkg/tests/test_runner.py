"""
runner 模組與 main.py 測試：設定檔、子命令與輸出格式
"""

import json
import os

import pandas as pd
import pytest

from conftest import CONFIG_DIR, FIXTURE_DIR, SQUARE_WELL_GROUND
from main import main
from runner import (
    SWEEP_COLUMNS,
    ConfigError,
    cmd_oracle,
    cmd_solve,
    cmd_sweep,
    cmd_thirring,
    load_config,
)
from runner.commands import EXIT_FAILED, EXIT_OK, EXIT_USAGE

SQUARE_WELL = {'family': 'square_well', 'depth': 0.5, 'half_width': 2.0}


def _write_config(directory, data, name='config.json'):
    path = directory / name
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


# ============================================================
# 設定檔
# ============================================================

class TestConfig:
    def test_defaults(self, tmp_path):
        config = load_config(_write_config(tmp_path, {'potential': SQUARE_WELL}), environ={})
        assert config.grid.half_width == 20.0 and config.grid.n_cells == 800
        assert config.method == 'matrix'
        assert config.jobs == 1
        assert config.out_dir == str((tmp_path / 'output').resolve())
        assert config.sweep is None and config.nonlinear is None

    def test_committed_configs_load(self):
        for name in sorted(os.listdir(CONFIG_DIR)):
            config = load_config(os.path.join(CONFIG_DIR, name), environ={})
            assert config.potential is not None

    @pytest.mark.parametrize('data', [
        {'potential': SQUARE_WELL, 'sweep': {'parameter': 'depth', 'min': 0.1, 'max': 0.9, 'steps': 1}},
        {'potential': SQUARE_WELL, 'sweep': {'parameter': 'depth', 'min': 0.1, 'max': 0.9, 'steps': 2.5}},
        {'potential': SQUARE_WELL, 'sweep': {'parameter': 'width', 'min': 1, 'max': 2, 'steps': 3}},
        {'potential': SQUARE_WELL, 'colour': 'blue'},
        {'potential': {'family': 'square_well', 'depth': 0.5}},
        {'potential': {'family': 'harmonic'}},
        {'potential': SQUARE_WELL, 'grid': {'n_cells': 801}},
        {'potential': SQUARE_WELL, 'solver': {'method': 'galerkin'}},
        {'potential': SQUARE_WELL, 'solver': {'leak': 1e-8}},
        {'potential': SQUARE_WELL, 'solver': {'n_refine': 0}},
        {'potential': SQUARE_WELL, 'nonlinear': {'alpha': 0.3}},
        {'potential': SQUARE_WELL, 'parallelism': {'jobs': 0}},
        {'grid': {'n_cells': 800}},
    ])
    def test_invalid_config(self, tmp_path, data):
        with pytest.raises(ConfigError):
            load_config(_write_config(tmp_path, data), environ={})

    def test_malformed_json_reports_line(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{\n  "potential": {"family": "zero"\n  "grid": {}\n}\n', encoding='utf-8')
        with pytest.raises(ConfigError) as info:
            load_config(str(path), environ={})
        assert '第 3 行' in str(info.value)
        assert '"grid"' in str(info.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(str(tmp_path / 'missing.json'))

    def test_precedence(self, tmp_path):
        path = _write_config(tmp_path, {
            'potential': SQUARE_WELL,
            'output': {'dir': 'from_file'},
            'parallelism': {'jobs': 2},
        })
        assert load_config(path, environ={}).jobs == 2
        environ = {'DIRAC_OUT_DIR': str(tmp_path / 'from_env'), 'DIRAC_JOBS': '3'}
        from_env = load_config(path, environ=environ)
        assert from_env.out_dir == str(tmp_path / 'from_env') and from_env.jobs == 3
        from_flags = load_config(path, out_dir=str(tmp_path / 'from_flag'), jobs=4, environ=environ)
        assert from_flags.out_dir == str(tmp_path / 'from_flag') and from_flags.jobs == 4

    def test_bad_env_jobs(self, tmp_path):
        path = _write_config(tmp_path, {'potential': SQUARE_WELL})
        with pytest.raises(ConfigError):
            load_config(path, environ={'DIRAC_JOBS': 'many'})

    def test_relative_paths_resolve_against_config(self, tmp_path):
        table = tmp_path / 'tables' / 'well.txt'
        table.parent.mkdir()
        table.write_text('-1 0\n0 -0.5\n1 0\n', encoding='utf-8')
        nested = tmp_path / 'configs'
        nested.mkdir()
        path = _write_config(nested, {
            'potential': {'family': 'tabulated', 'path': '../tables/well.txt'},
            'output': {'dir': '../out'},
        })
        config = load_config(path, environ={})
        assert config.potential.family == 'tabulated'
        assert os.path.normpath(config.out_dir) == str((tmp_path / 'out').resolve())


# ============================================================
# solve
# ============================================================

class TestSolveCommand:
    def test_free_particle_reports_no_states(self, tmp_path, capsys):
        config = load_config(os.path.join(CONFIG_DIR, 'zero.json'), out_dir=str(tmp_path), environ={})
        assert cmd_solve(config) == EXIT_OK
        assert 'no bound states found' in capsys.readouterr().out
        assert os.listdir(tmp_path) == []

    def test_asymmetric_table_fails(self, tmp_path):
        config = load_config(
            os.path.join(CONFIG_DIR, 'asymmetric_table.json'), out_dir=str(tmp_path), environ={}
        )
        assert cmd_solve(config) == EXIT_FAILED

    def test_square_well_writes_certified_states(self, tmp_path, capsys):
        config = load_config(os.path.join(CONFIG_DIR, 'square_well.json'), out_dir=str(tmp_path), environ={})
        assert cmd_solve(config) == EXIT_OK
        summary = capsys.readouterr().out
        assert '0.250000 ±' in summary and 'PASS' in summary
        assert sorted(os.listdir(tmp_path)) == ['state_00.json', 'state_01.json']
        with open(tmp_path / 'state_00.json', encoding='utf-8') as f:
            record = json.load(f)
        assert record['parity'] == 'even_phi'
        assert record['passed'] is True
        assert record['gamma'] == pytest.approx(SQUARE_WELL_GROUND, abs=1e-5)
        assert len(record['phi']) == len(record['phi_points']) == record['grid']['n_cells'] + 1
        assert len(record['chi']) == len(record['chi_points']) == record['grid']['n_cells']
        assert abs(record['certificate']['overlap_S']) == pytest.approx(0.25, abs=1e-6)


# ============================================================
# sweep
# ============================================================

def _sweep_config(tmp_path, jobs):
    path = _write_config(tmp_path, {
        'potential': SQUARE_WELL,
        'grid': {'half_width': 40.0, 'n_cells': 800},
        'solver': {'n_refine': 1},
        'sweep': {'parameter': 'depth', 'min': 0.5, 'max': 0.9, 'steps': 3},
    }, name=f'sweep_{jobs}.json')
    return load_config(path, out_dir=str(tmp_path / f'jobs_{jobs}'), jobs=jobs, environ={})


class TestSweepCommand:
    @pytest.mark.slow
    def test_parallel_output_identical(self, tmp_path):
        for jobs in (1, 4, 8):
            cmd_sweep(_sweep_config(tmp_path, jobs))
        serial = (tmp_path / 'jobs_1' / 'sweep.csv').read_bytes()
        for jobs in (4, 8):
            assert (tmp_path / f'jobs_{jobs}' / 'sweep.csv').read_bytes() == serial, jobs
        assert serial.splitlines()[0].decode('utf-8') == ','.join(SWEEP_COLUMNS)

    @pytest.mark.slow
    def test_ground_state_spread_decreases_with_depth(self, tmp_path):
        assert cmd_sweep(_sweep_config(tmp_path, 1)) == EXIT_OK
        table = pd.read_csv(tmp_path / 'jobs_1' / 'sweep.csv')
        ground = table[table['state_index'] == 0].sort_values('value')
        assert len(ground) == 3
        assert ground['delta_z'].is_monotonic_decreasing
        assert set(table['pass']) == {True}

    @pytest.mark.slow
    def test_fifty_point_sweep_all_certified(self, tmp_path):
        path = _write_config(tmp_path, {
            'potential': SQUARE_WELL,
            'grid': {'half_width': 40.0, 'n_cells': 800},
            'solver': {'n_refine': 1},
            'sweep': {'parameter': 'depth', 'min': 0.25, 'max': 0.9, 'steps': 50},
        }, name='sweep_50.json')
        config = load_config(path, out_dir=str(tmp_path / 'sweep_50'), environ={})
        assert cmd_sweep(config) == EXIT_OK
        table = pd.read_csv(tmp_path / 'sweep_50' / 'sweep.csv')
        assert table['value'].nunique() == 50
        assert (table['state_index'] >= 0).all()
        assert set(table['pass']) == {True}
        assert (table['delta_z'] > 0.5).all()
        assert (table['abs_S'] - 0.25).abs().max() <= 1e-5

    def test_requires_sweep_block(self, tmp_path):
        config = load_config(_write_config(tmp_path, {'potential': SQUARE_WELL}), environ={})
        assert cmd_sweep(config) == EXIT_USAGE


# ============================================================
# thirring 與 oracle
# ============================================================

class TestThirringCommand:
    def test_zero_coupling_matches_linear_solve(self, tmp_path):
        common = {'potential': SQUARE_WELL, 'grid': {'half_width': 30.0, 'n_cells': 600}}
        solve_path = _write_config(tmp_path, common, name='solve.json')
        thirring_path = _write_config(tmp_path, dict(common, nonlinear={
            'coupling': 0.0, 'seed': SQUARE_WELL,
        }), name='thirring.json')
        assert cmd_solve(load_config(solve_path, out_dir=str(tmp_path / 'linear'), environ={})) == EXIT_OK
        assert cmd_thirring(load_config(thirring_path, out_dir=str(tmp_path / 'nl'), environ={})) == EXIT_OK

        with open(tmp_path / 'linear' / 'state_00.json', encoding='utf-8') as f:
            linear = json.load(f)
        with open(tmp_path / 'nl' / 'thirring_state.json', encoding='utf-8') as f:
            nonlinear = json.load(f)
        # 細化時自洽路徑每層重新全區間求解，與線性細化只差在本徵值的最後幾位
        assert nonlinear['gamma'] == pytest.approx(linear['gamma'], abs=1e-12)
        for key, value in linear['certificate'].items():
            if isinstance(value, dict):
                assert nonlinear['certificate'][key] == pytest.approx(value, rel=1e-6, abs=1e-12), key
            elif isinstance(value, bool):
                assert nonlinear['certificate'][key] == value, key
            else:
                assert nonlinear['certificate'][key] == pytest.approx(value, rel=1e-9, abs=1e-12), key
        assert nonlinear['iterations'] == 1 and nonlinear['coupling'] == 0.0
        trace = pd.read_csv(tmp_path / 'nl' / 'trace.csv')
        assert list(trace.columns) == ['n', 'gamma', 'delta_W']
        assert (tmp_path / 'nl' / 'effective_potential.txt').exists()

    def test_requires_nonlinear_block(self, tmp_path):
        config = load_config(_write_config(tmp_path, {'potential': SQUARE_WELL}), environ={})
        assert cmd_thirring(config) == EXIT_USAGE


class TestOracleCommand:
    def test_regenerated_table_matches(self, tmp_path):
        config = load_config(os.path.join(CONFIG_DIR, 'oracle.json'), out_dir=str(tmp_path), environ={})
        assert cmd_oracle(config) == EXIT_OK
        assert (tmp_path / 'square_well_oracle.txt').exists()

    def test_unsupported_family(self, tmp_path):
        path = _write_config(tmp_path, {'potential': {'family': 'gaussian_well', 'depth': 0.5, 'width': 1.0}})
        assert cmd_oracle(load_config(path, out_dir=str(tmp_path), environ={})) == EXIT_USAGE

    def test_zero_family_empty(self, tmp_path):
        path = _write_config(tmp_path, {
            'potential': {'family': 'zero'},
            'oracle': {'fixture': os.path.join(FIXTURE_DIR, 'square_well_oracle.txt')},
        })
        assert cmd_oracle(load_config(path, out_dir=str(tmp_path / 'out'), environ={})) == EXIT_OK


# ============================================================
# 主程式
# ============================================================

class TestMain:
    def test_solve_entry_point(self, tmp_path):
        argv = ['solve', '--config', os.path.join(CONFIG_DIR, 'zero.json'), '--out', str(tmp_path)]
        assert main(argv) == EXIT_OK

    def test_config_error_exit_code(self, tmp_path, capsys):
        assert main(['solve', '--config', str(tmp_path / 'missing.json')]) == 2
        assert '[Error]' in capsys.readouterr().out

    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            main([])
