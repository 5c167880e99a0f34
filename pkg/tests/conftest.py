import numpy as np
import pytest

from gatesim.device import DeviceParams, load_params


@pytest.fixture(scope="session")
def unit_params():
    """Dimensionless working point: g = 1, detunings and resonant drive at 10 g."""
    return DeviceParams(
        g=1.0,
        delta_c=10.0,
        delta_ck=10.0,
        omega_raman=1.0,
        omega_resonant=10.0,
        gamma2_inv=1.0,
        quality_q=1e5,
        nu_c=3e9,
    )


@pytest.fixture(scope="session")
def cpw_params():
    params, _ = load_params("cpw")
    return params


@pytest.fixture(scope="session")
def squid_raw():
    _, raw = load_params("squid")
    return raw


@pytest.fixture(scope="session")
def squid_params():
    params, _ = load_params("squid")
    return params


def product_state(space, locals_):
    """Dense product state from per-subsystem local vectors."""
    amps = np.array([1.0 + 0.0j])
    for vec in locals_:
        amps = np.kron(amps, np.asarray(vec, dtype=complex))
    assert amps.shape == (space.total_dim,)
    return amps


def qudit_level(level):
    v = np.zeros(4, dtype=complex)
    v[level] = 1.0
    return v


def qudit_plus(sign=1.0):
    return (qudit_level(0) + sign * qudit_level(1)) / np.sqrt(2.0)


def cavity_level(n, dim):
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return v
