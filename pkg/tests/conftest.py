import os

import numpy as np
import pytest

from kgwall.grid import make_grid
from kgwall.mass import RegularizedMass


CONFIG_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "configs")


@pytest.fixture
def torus():
    """[0, 2 pi) with 64 points, where cos(kx) is an exact grid mode"""
    return make_grid(2 * np.pi, 64)


@pytest.fixture(scope="session")
def wall_grid():
    """L = 100, dx = 0.01"""
    return make_grid(100.0, 10000)


@pytest.fixture
def coarse_box():
    """L = 100 with dx = 0.05, for quick runs with wide mollifiers"""
    return make_grid(100.0, 2000)


def constant_mass(grid, value=0.0):
    return RegularizedMass(0.0, np.full(grid.n, float(value)), grid)


def shipped_config(name):
    return os.path.join(CONFIG_DIR, name)


def small_config(**changes):
    """A quick config on the coarse box"""

    data = {
        "Alpha": 1.0,
        "Length": 100.0,
        "Points": 2000,
        "TimeStep": 0.05,
        "FinalTime": 2.0,
        "Scheme": "spectral-strang",
        "Mass": "zero",
        "Epsilon": 0.5,
        "Snapshots": [0.0, 1.0, 2.0],
        "EpsilonLadder": [0.5, 0.4, 0.3],
    }
    data.update(changes)
    return data
