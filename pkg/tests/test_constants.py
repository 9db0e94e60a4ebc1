import math

import scipy.constants as sc

from magcp import constants as C


def test_codata_values_match_scipy():
    assert math.isclose(C.HBAR, sc.hbar, rel_tol=1e-9)
    assert math.isclose(C.E_CHARGE, sc.e, rel_tol=1e-12)
    assert math.isclose(C.K_B, sc.k, rel_tol=1e-12)
    assert C.C_LIGHT == sc.c
    assert math.isclose(C.EPS0, sc.epsilon_0, rel_tol=1e-9)
    assert math.isclose(C.MU0, sc.mu_0, rel_tol=1e-9)


def test_vacuum_impedance_identity():
    assert math.isclose(C.ETA0**2, C.MU0 / C.EPS0, rel_tol=1e-15)
    assert math.isclose(C.ETA0, 376.730313668, rel_tol=1e-9)


def test_atomic_polarizability_unit_scale():
    # documented interface constant for '#units: eV au' tables
    assert C.ALPHA_AU == 1.6488e-41
