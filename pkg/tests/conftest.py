import io

import numpy as np
import pytest

from magcp import GrapheneParams, LorentzPolarizability
from magcp.constants import E_CHARGE


@pytest.fixture
def atom():
    return LorentzPolarizability(alpha0=5.26e-39, omega0=2.41e15)


@pytest.fixture
def params_4k():
    def make(B):
        return GrapheneParams(B=B, T=4.0)
    return make


@pytest.fixture
def params_300k():
    def make(B):
        return GrapheneParams(B=B, T=300.0)
    return make


def lorentzian_table_bytes(alpha0=1e-39, omega0=2.5e15, gamma_frac=0.005):
    """Sampled damped-oscillator Im alpha on a dense log grid with linear
    refinement across the resonance; UTF-8 table bytes."""
    gamma = gamma_frac * omega0
    grid = np.geomspace(1e13, 1e18, 3000)
    peak = np.linspace(omega0 - 50 * gamma, omega0 + 50 * gamma, 1601)
    w = np.unique(np.concatenate([grid, peak]))
    im = alpha0 * omega0**2 * gamma * w / ((omega0**2 - w**2) ** 2 + gamma**2 * w**2)
    buf = io.StringIO()
    buf.write("# sampled damped Lorentz oscillator\n")
    for wi, ii in zip(w, im):
        buf.write(f"{wi:.10e} {ii:.10e}\n")
    return buf.getvalue().encode("utf-8")


@pytest.fixture(scope="session")
def lorentzian_table():
    return lorentzian_table_bytes()


def make_table(rows, header=None):
    lines = [] if header is None else [header]
    lines += [f"{w:.9e} {i:.9e}" for w, i in rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


MU_C_DEFAULT = 0.115 * E_CHARGE
