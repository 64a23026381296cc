import numpy as np
import pytest

from dunkl_osc import FULL_LINE, Resolution, bump, default_corpus, sample


@pytest.fixture(scope="session")
def res512():
    return Resolution(8, 32, 3.0)


@pytest.fixture(scope="session")
def space512(res512):
    return res512.space_grid()


@pytest.fixture(scope="session")
def freq512(res512):
    return res512.freq_grid()


@pytest.fixture(scope="session")
def corpus512(space512):
    return default_corpus(space512, 7)


@pytest.fixture(scope="session")
def one_bump(space512):
    return sample(bump(0.3, 1.4), space512, FULL_LINE)


@pytest.fixture(scope="session")
def res_hi():
    return Resolution(24, 32, 3.0)


@pytest.fixture(scope="session")
def space_hi(res_hi):
    return res_hi.space_grid()


@pytest.fixture(scope="session")
def freq_hi(res_hi):
    return res_hi.freq_grid()


@pytest.fixture(scope="session")
def corpus_hi(space_hi):
    return default_corpus(space_hi, 7)


def l2_weighted(vals, grid, alpha):
    meas = grid.weights * np.abs(grid.points) ** (2.0 * alpha + 1.0)
    return float(np.sqrt(np.sum(meas * np.abs(vals) ** 2)))
