"""Magneto-optical sheet conductivity of graphene on the imaginary axis.

The longitudinal and Hall conductivities are Landau-level sums. With
M_n = sqrt(n)*M_1, M_1 = sqrt(2*hbar*e*vF^2*B), Xi = xi + 1/tau and
D_n = (M_{n+1}-M_n)^2 + hbar^2 Xi^2 (D'_n with M_n -> -M_n), and n_F the
Fermi-Dirac occupation at chemical potential mu_c:

  sigma_xx = (e^3 vF^2 B hbar Xi / pi) * sum_n {
                 [n_F(M_n)-n_F(M_{n+1})+n_F(-M_{n+1})-n_F(-M_n)] / (D_n (M_{n+1}-M_n))
               + [n_F(-M_n)-n_F(M_{n+1})+n_F(-M_{n+1})-n_F(M_n)] / (D'_n (M_{n+1}+M_n)) }

  sigma_xy = -(e^3 vF^2 B / pi) * sum_n
                 {n_F(M_n)-n_F(M_{n+1})-n_F(-M_{n+1})+n_F(-M_n)} * [1/D_n + 1/D'_n]

These expressions are often quoted in Gaussian units with explicit factors
of c; here everything is SI and the prefactors above yield sheet
conductance in siemens directly. Two checks pin the conversion: at large
xi sigma_xx approaches the universal value e^2/(4*hbar), and in the B -> 0
limit sigma_xx(0) approaches the Drude value e^2*mu_c*tau/(pi*hbar^2).
Both are enforced in the test suite.

On the imaginary axis every quantity is real; sigma_xx > 0 for xi >= 0,
and sigma_xy vanishes identically at mu_c = 0 (particle-hole symmetry).

Truncation. The Hall series terminates once the occupation brackets die
out (exponentially beyond the filled levels), but the longitudinal series
has an interband tail whose terms fall off only like n^(-3/2). Partial
sums therefore converge as 1/sqrt(N), far too slowly to be usable. The
evaluator instead sums N terms explicitly and closes the series with the
integral remainder of the saturated interband summand,

  R(N) = arctan(hbar*Xi / (2*M_1*sqrt(N))) / (M_1^2 * hbar * Xi)

plus the midpoint Euler-Maclaurin correction. N is doubled until the
result is stable to the requested tolerance; the hard cap is N = 10^6.

Zero field. The Landau representation degenerates as B -> 0, so B = 0
requests are served by a documented fallback: sigma_xy = 0 exactly, and
sigma_xx evaluated at the reference field B_REF = 1e-3 T, with a
consistency check against 2*B_REF. The formulas are never evaluated at
B = 0.
"""
import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from ._backend import landau_block
from ._kernels_py import occupation
from .constants import E_CHARGE, HBAR, K_B
from .exceptions import ConvergenceError, ValidationError

__all__ = [
    "GrapheneParams",
    "ConductivitySample",
    "landau_level",
    "landau_scale",
    "fermi_dirac",
    "sigma_xx",
    "sigma_xy",
    "conductivity_sample",
    "predict_crossings",
    "B_REF",
    "N_HARD",
]

#: reference field (T) standing in for B = 0
B_REF = 1e-3
#: hard cap on explicitly summed Landau levels
N_HARD = 10**6
#: relative agreement required between the B_REF and 2*B_REF fallback values
_B0_CHECK_RTOL = 1e-2


@dataclass(frozen=True)
class GrapheneParams:
    """Material state of the graphene sheet.

    Attributes
    ----------
    v_F : float
        Fermi velocity in m/s
    tau : float
        phenomenological scattering time in s (1/tau is the scattering rate)
    mu_c : float
        chemical potential in J (may be negative)
    B : float
        perpendicular magnetic flux density in T; B == 0 selects the
        documented zero-field fallback, B < 0 is rejected
    T : float
        temperature in K; T == 0 uses exact step occupations
    """

    v_F: float = 1e6
    tau: float = 1.84e-13
    mu_c: float = 0.115 * E_CHARGE
    B: float = 0.0
    T: float = 0.0

    def __post_init__(self):
        if not self.v_F > 0:
            raise ValidationError(f"v_F must be > 0, got {self.v_F}")
        if not self.tau > 0:
            raise ValidationError(f"tau must be > 0, got {self.tau}")
        if self.B < 0:
            raise ValidationError(f"B must be >= 0, got {self.B}")
        if self.T < 0:
            raise ValidationError(f"T must be >= 0, got {self.T}")


@dataclass(frozen=True)
class ConductivitySample:
    """Both conductivity components at one imaginary frequency.

    sigma_xx and sigma_xy are sheet conductances in S, purely real.
    n_terms_used counts explicitly summed Landau levels; tail_estimate is
    the relative magnitude of the truncated remainder after the analytic
    tail closure.
    """

    xi: float
    sigma_xx: float
    sigma_xy: float
    n_terms_used: int
    tail_estimate: float


def landau_scale(B, v_F=1e6):
    """Landau energy scale M_1 = sqrt(2*hbar*e*vF^2*B) in J; requires B > 0."""
    if not B > 0:
        raise ValidationError(f"landau_scale requires B > 0, got {B}")
    return math.sqrt(2.0 * HBAR * E_CHARGE * v_F * v_F * B)


def landau_level(n, B, v_F=1e6):
    """Energy of the n-th Landau level, sqrt(n)*M_1, in J.

    Parameters
    ----------
    n : int
        level index, >= 0
    B : float
        field in T, > 0
    v_F : float
        Fermi velocity in m/s

    Raises
    ------
    ValidationError
        for B <= 0 or n < 0
    """
    if n < 0 or int(n) != n:
        raise ValidationError(f"landau_level requires integer n >= 0, got {n}")
    return math.sqrt(float(n)) * landau_scale(B, v_F)


def fermi_dirac(E, mu_c, T):
    """Fermi-Dirac occupation 1/(exp((E-mu_c)/kT)+1), overflow-safe.

    At T = 0 the exact step function is returned, with value 1/2 at
    E == mu_c. Accepts scalars or arrays.
    """
    if T < 0:
        raise ValidationError(f"fermi_dirac requires T >= 0, got {T}")
    out = occupation(E, mu_c, K_B * T)
    if np.isscalar(E) or np.ndim(E) == 0:
        return float(out)
    return out


def _interband_tail(N, m1, h_xi):
    """Remainder sum_{n>=N} 2/(D'_n (M_{n+1}+M_n)) of the saturated interband series.

    Valid once the occupation brackets have reached their asymptotic values
    (0 intraband, 2 interband). Midpoint integral with the leading
    Euler-Maclaurin correction; both are exact in the large-N limit.
    """
    y = float(N)
    R = math.atan(h_xi / (2.0 * m1 * math.sqrt(y))) / (m1 * m1 * h_xi)
    g = 1.0 / (m1 * math.sqrt(y) * (4.0 * m1 * m1 * y + h_xi * h_xi))
    gp = -g * (0.5 / y + 4.0 * m1 * m1 / (4.0 * m1 * m1 * y + h_xi * h_xi))
    return R + gp / 24.0


def _reduced_sums(xi, p, tol):
    """Adaptive evaluation of the reduced sums (S_xx [1/J^3], S_xy [1/J^2]).

    Doubles the explicit summation range until both components are stable
    to tol; S_xx carries the analytic interband tail closure.
    """
    kT = K_B * p.T
    m1 = landau_scale(p.B, p.v_F)
    h_xi = HBAR * (xi + 1.0 / p.tau)
    # start beyond the occupation boundary so the saturated tail applies
    lam = min(45.0, max(25.0, -math.log(tol) + 12.0))
    n_occ = ((abs(p.mu_c) + lam * kT) / m1) ** 2
    N = int(max(64, math.ceil(n_occ) + 8))
    if N > N_HARD:
        raise ConvergenceError(
            f"Landau sum needs {N} terms to clear the occupation boundary "
            f"(cap {N_HARD}); B={p.B} T is too small for T={p.T} K"
        )
    s_xx, s_xy = landau_block(h_xi, m1, p.mu_c, kT, 0, N)
    prev_xx = s_xx + _interband_tail(N, m1, h_xi)
    prev_xy = s_xy
    while True:
        N2 = min(2 * N, N_HARD)
        d_xx, d_xy = landau_block(h_xi, m1, p.mu_c, kT, N, N2)
        s_xx += d_xx
        s_xy += d_xy
        cur_xx = s_xx + _interband_tail(N2, m1, h_xi)
        cur_xy = s_xy
        delta_xx = abs(cur_xx - prev_xx)
        delta_xy = abs(cur_xy - prev_xy)
        # commensurate scales: sigma_xx ~ h_xi*S_xx, sigma_xy ~ S_xy
        scale_xy = max(abs(cur_xy), h_xi * abs(cur_xx))
        if delta_xx <= tol * abs(cur_xx) and delta_xy <= tol * scale_xy:
            tail_rel = max(
                delta_xx / abs(cur_xx) if cur_xx != 0.0 else 0.0,
                delta_xy / scale_xy if scale_xy != 0.0 else 0.0,
            )
            return cur_xx, cur_xy, N2, tail_rel
        if N2 >= N_HARD:
            raise ConvergenceError(
                f"Landau sum did not stabilize to tol={tol} within "
                f"N_HARD={N_HARD} terms (xi={xi}, B={p.B}, T={p.T})"
            )
        prev_xx, prev_xy, N = cur_xx, cur_xy, N2


@lru_cache(maxsize=1 << 18)
def _sample_cached(xi, v_F, tau, mu_c, B, T, tol):
    p = GrapheneParams(v_F=v_F, tau=tau, mu_c=mu_c, B=B, T=T)
    s_xx, s_xy, n_used, tail_rel = _reduced_sums(xi, p, tol)
    pref = E_CHARGE**3 * v_F * v_F * B / math.pi
    h_xi = HBAR * (xi + 1.0 / tau)
    return ConductivitySample(
        xi=xi,
        sigma_xx=pref * h_xi * s_xx,
        sigma_xy=-pref * s_xy,
        n_terms_used=n_used,
        tail_estimate=tail_rel,
    )


def conductivity_sample(xi, p, tol=1e-8):
    """Evaluate (sigma_xx, sigma_xy) at imaginary frequency xi.

    Parameters
    ----------
    xi : float
        imaginary angular frequency in rad/s, >= 0
    p : GrapheneParams
    tol : float
        relative truncation tolerance of the Landau sums

    Returns
    -------
    ConductivitySample

    Raises
    ------
    ConvergenceError
        if the adaptive truncation cannot reach tol within N_HARD terms,
        or the B -> 0 fallback fails its consistency check
    """
    if xi < 0:
        raise ValidationError(f"xi must be >= 0, got {xi}")
    if not tol > 0:
        raise ValidationError(f"tol must be > 0, got {tol}")
    if p.B == 0.0:
        ref = _sample_cached(xi, p.v_F, p.tau, p.mu_c, B_REF, p.T, tol)
        chk = _sample_cached(xi, p.v_F, p.tau, p.mu_c, 2.0 * B_REF, p.T, tol)
        dev = abs(ref.sigma_xx - chk.sigma_xx) / abs(ref.sigma_xx)
        if dev > _B0_CHECK_RTOL:
            raise ConvergenceError(
                f"B->0 fallback inconsistent: sigma_xx at B_REF and 2*B_REF "
                f"differ by {dev:.2e} (xi={xi}, T={p.T})"
            )
        return ConductivitySample(
            xi=xi,
            sigma_xx=ref.sigma_xx,
            sigma_xy=0.0,
            n_terms_used=ref.n_terms_used,
            tail_estimate=max(ref.tail_estimate, dev),
        )
    return _sample_cached(xi, p.v_F, p.tau, p.mu_c, p.B, p.T, tol)


def sigma_xx(xi, p, tol=1e-8):
    """Longitudinal sheet conductivity in S; see conductivity_sample."""
    return conductivity_sample(xi, p, tol).sigma_xx


def sigma_xy(xi, p, tol=1e-8):
    """Hall sheet conductivity in S; see conductivity_sample."""
    return conductivity_sample(xi, p, tol).sigma_xy


def predict_crossings(p, B_range):
    """Fields at which a Landau level crosses the chemical potential.

    Solving M_n(B) = mu_c for B gives B_n = mu_c^2 / (2 n hbar e vF^2),
    n = 1, 2, ...; each crossing discontinuously reconfigures the level
    occupations and hence the conductivity.

    Parameters
    ----------
    p : GrapheneParams
        mu_c must be > 0
    B_range : (float, float)
        inclusive interval of fields in T

    Returns
    -------
    list of float
        crossing fields inside B_range, ascending; empty if none
    """
    if not p.mu_c > 0:
        raise ValidationError(f"predict_crossings requires mu_c > 0, got {p.mu_c}")
    b_lo, b_hi = B_range
    if not (b_lo <= b_hi):
        raise ValidationError(f"invalid B_range {B_range}")
    b1 = p.mu_c**2 / (2.0 * HBAR * E_CHARGE * p.v_F**2)
    if b_lo <= 0:
        b_lo = min(b_hi, b1 * 1e-12)  # guard the n -> inf accumulation at B = 0
    out = []
    n = 1
    while True:
        b_n = b1 / n
        if b_n < b_lo:
            break
        if b_n <= b_hi:
            out.append(b_n)
        n += 1
    out.reverse()
    return out


def zero_field(p):
    """Copy of p with B = 0 (routed through the documented fallback)."""
    return replace(p, B=0.0)
