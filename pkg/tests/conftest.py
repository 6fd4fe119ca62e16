import numpy as np
import pytest

from h2h2 import autodiff as ad
from h2h2 import model_zoo as mz
from h2h2.report import sobol_points


def domain_samples(surface, n, seed=0):
    return sobol_points(surface.domain, n, seed)


@pytest.fixture(scope="session")
def m_gamma_geodesic():
    return mz.make_M_Gamma(0.0)


@pytest.fixture(scope="session")
def m_gamma_2():
    return mz.make_M_Gamma(2.0)


@pytest.fixture(scope="session")
def m_1m1_half():
    return mz.make_M_1m1(0.5)


@pytest.fixture(scope="session")
def m_1m1_04():
    return mz.make_M_1m1(0.4)


@pytest.fixture(scope="session")
def m_11_half():
    return mz.make_M_11(0.5)


@pytest.fixture(scope="session")
def m_11_03():
    return mz.make_M_11(0.3)


@pytest.fixture(scope="session")
def m_tau_m2():
    return mz.make_M_tau(-2.0)


@pytest.fixture(scope="session")
def m_kk_tanh():
    return mz.make_M_kk(0.5, ad.tanh, 1.0)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20250810)
