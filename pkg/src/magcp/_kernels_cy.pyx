# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Same contracts as magcp._kernels_py; see that module for documentation.
"""
from libc.math cimport exp, fabs, sqrt

import numpy as np

cimport numpy as cnp

from .constants import C_LIGHT as _C, EPS0 as _EPS0, ETA0_SQ as _ETA0_SQ, MU0 as _MU0

cdef double C_LIGHT = _C
cdef double EPS0 = _EPS0
cdef double ETA0_SQ = _ETA0_SQ
cdef double MU0 = _MU0

__all__ = ["landau_block", "cp_kernel_batch"]


cdef inline double _occ(double E, double mu, double kT) nogil:
    cdef double x
    if kT == 0.0:
        if E < mu:
            return 1.0
        if E > mu:
            return 0.0
        return 0.5
    x = (E - mu) / kT
    if x > 0.0:
        return exp(-x) / (1.0 + exp(-x))
    return 1.0 / (1.0 + exp(x))


def landau_block(double h_xi, double m1, double mu, double kT, long n0, long n1):
    """Partial Landau sums over n in [n0, n1); returns (s_xx, s_xy)."""
    cdef long n
    cdef double rt0, rt1, sM, dM, D, Dp, fp0, fp1, fm0, fm1
    cdef long double s_xx = 0.0, s_xy = 0.0
    with nogil:
        for n in range(n0, n1):
            rt0 = sqrt(<double> n)
            rt1 = sqrt(<double> n + 1.0)
            sM = m1 * (rt1 + rt0)
            dM = m1 / (rt1 + rt0)
            D = dM * dM + h_xi * h_xi
            Dp = sM * sM + h_xi * h_xi
            fp0 = _occ(m1 * rt0, mu, kT)
            fp1 = _occ(m1 * rt1, mu, kT)
            fm0 = _occ(-m1 * rt0, mu, kT)
            fm1 = _occ(-m1 * rt1, mu, kT)
            s_xx += (fp0 - fp1 + fm1 - fm0) / (D * dM) + (fm0 - fp1 + fm1 - fp0) / (Dp * sM)
            s_xy += (fp0 - fp1 - fm1 + fm0) * (1.0 / D + 1.0 / Dp)
    return float(s_xx), float(s_xy)


def cp_kernel_batch(cnp.ndarray[cnp.float64_t, ndim=1] s, double u0, double xi,
                    double z, double sigma_xx, double sigma_xy):
    """exp(-s)*G on quadrature nodes; see the numpy backend for the contract."""
    cdef Py_ssize_t i, n = s.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double u, kappa, Zh, Ze, delta, r_ss, r_pp, w
    cdef double ssq = sigma_xx * sigma_xx + sigma_xy * sigma_xy
    cdef double hall = ETA0_SQ * sigma_xy * sigma_xy
    for i in range(n):
        u = u0 + s[i]
        kappa = u / (2.0 * z)
        Zh = xi * MU0 / kappa
        Ze = kappa / (xi * EPS0)
        delta = (2.0 + Zh * sigma_xx) * (2.0 + Ze * sigma_xx) + hall
        r_ss = -(2.0 * sigma_xx * Zh + ETA0_SQ * ssq) / delta
        r_pp = (2.0 * sigma_xx * Ze + ETA0_SQ * ssq) / delta
        w = C_LIGHT * kappa / xi
        out[i] = exp(-s[i]) * (r_ss - (2.0 * w * w - 1.0) * r_pp)
    return out
