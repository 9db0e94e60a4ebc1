"""Diagonal reflection coefficients of an anisotropic conducting sheet.

For a free-standing sheet with surface current K = sigma . E the diagonal
reflection amplitudes on the imaginary-frequency axis are

    r_ss = -(2 sigma_xx Z_h + eta0^2 (sigma_xx^2 + sigma_xy^2)) / Delta
    r_pp = +(2 sigma_xx Z_e + eta0^2 (sigma_xx^2 + sigma_xy^2)) / Delta
    Delta = (2 + Z_h sigma_xx)(2 + Z_e sigma_xx) + (eta0 sigma_xy)^2

with the surface impedances Z_h = xi mu0 / kappa and Z_e = kappa/(xi eps0),
kappa = sqrt(xi^2/c^2 + k^2), and eta0^2 = mu0/eps0. With sigma_xx >= 0 the
coefficients are passive (|r| <= 1) and satisfy r_ss <= 0 <= r_pp.

The xi -> 0 limit is singular in the impedances (Z_e ~ 1/xi), so the
static coefficients needed by the zero-frequency term are implemented
analytically rather than by small-xi evaluation:

  * sigma_xx(0) > 0 (the generic case for any finite scattering time):
    r_pp -> 1 and r_ss -> 0.
  * sigma_xx(0) == 0 (idealized Hall sheet): r_pp = -r_ss =
    eta0^2 sigma_xy^2 / (4 + eta0^2 sigma_xy^2).

The branch threshold is sigma_xx(0) < 1e-12 S.
"""
import math
from dataclasses import dataclass

from .constants import C_LIGHT, EPS0, ETA0_SQ, MU0
from .exceptions import ValidationError

__all__ = [
    "WaveContext",
    "ReflectionPair",
    "impedances",
    "reflection_pair",
    "reflection_pair_static",
    "STATIC_SIGMA_XX_FLOOR",
]

#: sigma_xx(0) below this (in S) selects the idealized Hall branch
STATIC_SIGMA_XX_FLOOR = 1e-12


@dataclass(frozen=True)
class WaveContext:
    """Transverse wavenumber k, imaginary frequency xi and the axial
    wavenumber kappa = sqrt(xi^2/c^2 + k^2); kappa == k exactly at xi = 0."""

    k: float
    xi: float
    kappa: float

    @classmethod
    def make(cls, k, xi):
        if not k > 0:
            raise ValidationError(f"k must be > 0, got {k}")
        if xi < 0:
            raise ValidationError(f"xi must be >= 0, got {xi}")
        if xi == 0.0:
            kappa = k
        else:
            kappa = math.hypot(xi / C_LIGHT, k)
        return cls(k=k, xi=xi, kappa=kappa)


@dataclass(frozen=True)
class ReflectionPair:
    """Dimensionless diagonal reflection amplitudes (both real)."""

    r_ss: float
    r_pp: float


def impedances(ctx):
    """Surface impedances (Z_h, Z_e) in ohm at xi > 0.

    Z_h = xi*mu0/kappa, Z_e = kappa/(xi*eps0); their product is eta0^2 for
    every (k, xi). The xi = 0 point is a domain error: callers must use
    reflection_pair_static for the static limit.
    """
    if not ctx.xi > 0:
        raise ValidationError("impedances: xi must be > 0 (static limit is analytic)")
    return ctx.xi * MU0 / ctx.kappa, ctx.kappa / (ctx.xi * EPS0)


def reflection_pair(ctx, sigma):
    """Reflection amplitudes at xi > 0 from a conductivity sample.

    Parameters
    ----------
    ctx : WaveContext
        with ctx.xi > 0
    sigma : ConductivitySample
        real (sigma_xx, sigma_xy) at ctx.xi

    Returns
    -------
    ReflectionPair

    Raises
    ------
    ArithmeticError
        if Delta <= 0, which a passive sigma_xx >= 0 cannot produce
    """
    Zh, Ze = impedances(ctx)
    sxx, sxy = sigma.sigma_xx, sigma.sigma_xy
    ssq = sxx * sxx + sxy * sxy
    delta = (2.0 + Zh * sxx) * (2.0 + Ze * sxx) + ETA0_SQ * sxy * sxy
    if not delta > 0.0:
        raise ArithmeticError(
            f"reflection denominator Delta={delta} <= 0 at k={ctx.k}, xi={ctx.xi}; "
            f"input conductivities ({sxx}, {sxy}) are not passive"
        )
    r_ss = -(2.0 * sxx * Zh + ETA0_SQ * ssq) / delta
    r_pp = (2.0 * sxx * Ze + ETA0_SQ * ssq) / delta
    return ReflectionPair(r_ss=r_ss, r_pp=r_pp)


def reflection_pair_static(k, sigma0):
    """Analytic xi -> 0+ limit of the reflection amplitudes.

    Parameters
    ----------
    k : float
        transverse wavenumber in rad/m, > 0 (the limit is k-independent,
        the argument is kept for interface symmetry)
    sigma0 : ConductivitySample
        conductivities evaluated at xi = 0

    Returns
    -------
    ReflectionPair
    """
    if not k > 0:
        raise ValidationError(f"k must be > 0, got {k}")
    if sigma0.sigma_xx < 0:
        raise ValidationError("sigma_xx(0) must be >= 0")
    if sigma0.sigma_xx > STATIC_SIGMA_XX_FLOOR:
        return ReflectionPair(r_ss=0.0, r_pp=1.0)
    hall = ETA0_SQ * sigma0.sigma_xy * sigma0.sigma_xy
    r = hall / (4.0 + hall)
    return ReflectionPair(r_ss=-r, r_pp=r)
