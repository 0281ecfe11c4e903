import pytest

from qhopf import preset


# Presets (and especially the twisted coalgebra data) are expensive to build
# for the R-flux model, so they are shared across the whole test session.


@pytest.fixture(scope="session")
def classical():
    return preset("classical")


@pytest.fixture(scope="session")
def moyal():
    return preset("moyal")


@pytest.fixture(scope="session")
def rflux():
    return preset("rflux")


@pytest.fixture(scope="session")
def moyal_hf(moyal):
    return moyal.hopf_f


@pytest.fixture(scope="session")
def rflux_hf(rflux):
    return rflux.hopf_f
