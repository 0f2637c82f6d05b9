"""
共用測試設定
專案根目錄加入 sys.path，並提供常用位勢、網格與固定表
"""

import os
import sys

import pytest

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from core import make_grid
from eigensolver import METHOD_MATRIX, PARITY_EVEN, BoundState
from oracles import read_fixture_table
from potentials import PotentialSpec

FIXTURE_DIR = os.path.join(PROJECT_ROOT, 'fixtures')
CONFIG_DIR = os.path.join(PROJECT_ROOT, 'configs')

# 方井 V=0.5, a=2 的 even_phi 基態（fixtures/square_well_oracle.txt）
SQUARE_WELL_GROUND = 6.3625708846870e-01


@pytest.fixture(scope='session')
def oracle_table():
    return read_fixture_table(os.path.join(FIXTURE_DIR, 'square_well_oracle.txt'))


@pytest.fixture
def square_well():
    return PotentialSpec.square_well(0.5, 2.0)


@pytest.fixture
def fixture_state():
    """把任意旋量包成 BoundState（測試觀測量用，不是本徵態）"""

    def build(spinor, grid, gamma=0.0, coarse_state=None):
        return BoundState(
            gamma=gamma,
            spinor=spinor,
            parity=PARITY_EVEN,
            method=METHOD_MATRIX,
            residual=0.0,
            grid=grid,
            boundary_leak=0.0,
            coarse_state=coarse_state,
        )

    return build


@pytest.fixture(scope='session')
def gaussian_grid():
    return make_grid(10.0, 400)
