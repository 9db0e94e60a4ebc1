"""Pure-numpy implementations of the two hot kernels.

This module mirrors the API of the compiled core ``magcp._kernels_cy`` and
is selected at import time by :mod:`magcp._backend` when the extension is
not available (or when ``MAGCP_BACKEND=python`` is set). Both backends must
agree to floating-point roundoff; ``tests/test_backends.py`` enforces this.

Kernel 1, ``landau_block``: partial sums of the Landau-level series for the
longitudinal and Hall sheet conductivities on the imaginary-frequency axis.
The caller supplies the broadened energy ``h_xi = hbar*(xi + 1/tau)`` and
the Landau energy scale ``m1 = sqrt(2*hbar*e*vF^2*B)``; the returned sums
carry units 1/J^3 (longitudinal) and 1/J^2 (Hall) and are to be multiplied
by ``e^3 vF^2 B h_xi / pi`` and ``-e^3 vF^2 B / pi`` respectively.

Kernel 2, ``cp_kernel_batch``: the reflection-weighted integrand of the
transverse-wavevector integral, evaluated on a batch of quadrature nodes in
the exponentially mapped variable s = 2*kappa*z - u0.
"""
import numpy as np

from .constants import C_LIGHT, EPS0, ETA0_SQ, MU0

__all__ = ["landau_block", "cp_kernel_batch", "occupation"]


def occupation(E, mu, kT):
    """Fermi-Dirac occupation, overflow-safe, with the exact T=0 step.

    Parameters
    ----------
    E : ndarray or float
        energy in J
    mu : float
        chemical potential in J
    kT : float
        k_B*T in J; kT == 0 selects the step function (1/2 at E == mu)

    Returns
    -------
    ndarray or float in [0, 1]
    """
    E = np.asarray(E, dtype=np.float64)
    if kT == 0.0:
        return np.where(E < mu, 1.0, np.where(E > mu, 0.0, 0.5))
    x = (E - mu) / kT
    out = np.empty_like(x)
    pos = x > 0
    ex = np.exp(-np.abs(x))
    out[pos] = ex[pos] / (1.0 + ex[pos])
    out[~pos] = 1.0 / (1.0 + ex[~pos])
    return out


def landau_block(h_xi, m1, mu, kT, n0, n1):
    """Partial Landau sums over level index n in [n0, n1).

    Parameters
    ----------
    h_xi : float
        hbar*(xi + 1/tau) in J (broadened imaginary frequency)
    m1 : float
        Landau energy scale sqrt(2*hbar*e*vF^2*B) in J, > 0
    mu : float
        chemical potential in J
    kT : float
        k_B*T in J, >= 0
    n0, n1 : int
        half-open index range

    Returns
    -------
    (s_xx, s_xy) : tuple of float
        partial sums in 1/J^3 and 1/J^2
    """
    n = np.arange(n0, n1, dtype=np.float64)
    rt0 = np.sqrt(n)
    rt1 = np.sqrt(n + 1.0)
    # dM written as m1/(rt1+rt0) to avoid cancellation at large n
    sM = m1 * (rt1 + rt0)
    dM = m1 / (rt1 + rt0)
    D = dM * dM + h_xi * h_xi
    Dp = sM * sM + h_xi * h_xi
    fp0 = occupation(m1 * rt0, mu, kT)
    fp1 = occupation(m1 * rt1, mu, kT)
    fm0 = occupation(-m1 * rt0, mu, kT)
    fm1 = occupation(-m1 * rt1, mu, kT)
    s_xx = np.sum((fp0 - fp1 + fm1 - fm0) / (D * dM)
                  + (fm0 - fp1 + fm1 - fp0) / (Dp * sM))
    s_xy = np.sum((fp0 - fp1 - fm1 + fm0) * (1.0 / D + 1.0 / Dp))
    return float(s_xx), float(s_xy)


def cp_kernel_batch(s, u0, xi, z, sigma_xx, sigma_xy):
    """Reflection-weighted integrand exp(-s)*G on quadrature nodes.

    G = r_ss - (2*(c*kappa/xi)^2 - 1)*r_pp evaluated at kappa = (u0+s)/(2z),
    with the sheet reflection coefficients built from (sigma_xx, sigma_xy).
    The overall factor exp(-u0) is left to the caller so the batch stays
    O(1) even deep in the evanescent tail.

    Parameters
    ----------
    s : ndarray
        nodes in the mapped variable, s >= 0
    u0 : float
        2*xi*z/c, lower end of the mapped integration variable
    xi : float
        imaginary frequency in rad/s, > 0
    z : float
        atom-sheet distance in m, > 0
    sigma_xx, sigma_xy : float
        sheet conductivities in S at this xi

    Returns
    -------
    ndarray of integrand values
    """
    u = u0 + s
    kappa = u / (2.0 * z)
    Zh = xi * MU0 / kappa
    Ze = kappa / (xi * EPS0)
    ssq = sigma_xx * sigma_xx + sigma_xy * sigma_xy
    delta = (2.0 + Zh * sigma_xx) * (2.0 + Ze * sigma_xx) + ETA0_SQ * sigma_xy * sigma_xy
    r_ss = -(2.0 * sigma_xx * Zh + ETA0_SQ * ssq) / delta
    r_pp = (2.0 * sigma_xx * Ze + ETA0_SQ * ssq) / delta
    w = C_LIGHT * kappa / xi
    return np.exp(-s) * (r_ss - (2.0 * w * w - 1.0) * r_pp)
