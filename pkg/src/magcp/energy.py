"""Finite-temperature Casimir-Polder energy of an atom above the sheet.

The interaction energy at temperature T > 0 is a sum over Matsubara
frequencies xi_l = 2*pi*l*k_B*T/hbar (the standard, dimensionally
consistent definition) of a transverse-wavevector integral:

    U_T(z) = (k_B T / (eps0 c^2)) * sum'_{l>=0} xi_l^2 alpha(i xi_l)
             * (1/4pi) int_{xi_l/c}^inf dkappa e^{-2 kappa z}
               [ r_ss - (2 c^2 kappa^2 / xi_l^2 - 1) r_pp ]

where the prime halves the l = 0 term. The radial k-integral has been
recast with kappa = sqrt(xi^2/c^2 + k^2) (k dk = kappa dkappa) and the
angular integral already performed; for quadrature it is mapped once more
to u = 2*kappa*z and integrated on u in [u0, u0 + U_SPAN] with composite
Gauss-Legendre panels whose order doubles until the requested relative
tolerance is met. e^{-U_SPAN} with U_SPAN = 60 is below any tolerance of
interest.

The l = 0 term would be ill-conditioned if evaluated from the raw
integrand (Z_e ~ 1/xi); its analytic limit is used instead. The bracket
tends to -2 c^2 k^2 r_pp(k, 0) and the static r_pp is k-independent, so

    U_0-term = - k_B T alpha(0) r_pp(0) / (16 pi eps0 z^3),

which on the generic branch (r_pp(0) = 1) is the classic thermal
asymptote that dominates at large distance.

Matsubara truncation: the series is summed term by term; once three
consecutive terms fall below tol_sum * |U| the remainder is bounded by
geometric extrapolation of the observed decay (driven by the e^{-2 xi z/c}
suppression) and the sum stops when that bound is below tol_sum * |U|.
At low temperature the spacing u1 = 2*xi_1*z/c is tiny, the per-term decay
is slow, and a bare geometric stop would either need >> 10^5 terms or
leave a tail far above tolerance; in that regime the evaluator switches
after L_SWITCH explicit terms to an integral completion: the remaining sum
is replaced by the midpoint-rule integral over continuous l (error
O(u1^2/24), negligible exactly when the switch is needed), evaluated with
the same panel quadrature. The hard cap is l <= 10^5.

The T = 0 energy replaces k_B T sum'_l by (hbar/2pi) int_0^inf dxi, with
conductivities evaluated at exact step occupations.

Conductivity samples are cached per (xi, parameters) process-wide, which
makes B = 0 references and z-sweeps at fixed (B, T) cheap.
"""
import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from ._backend import cp_kernel_batch
from .conductivity import GrapheneParams, conductivity_sample
from .constants import C_LIGHT, EPS0, HBAR, K_B
from .exceptions import ConvergenceError, ValidationError
from .polarizability import alpha_imag, alpha_static
from .reflection import reflection_pair_static

__all__ = [
    "EnergyQuery",
    "EnergyResult",
    "KIntegral",
    "matsubara_frequency",
    "k_integral",
    "zero_frequency_term",
    "casimir_polder_energy",
    "casimir_polder_energy_T0",
    "normalized_energy",
]

#: span of the exponentially mapped integration variable
U_SPAN = 60.0
#: panel edges in the mapped variable (offsets from u0)
_PANEL_EDGES = (0.0, 0.5, 1.5, 3.5, 7.5, 15.5, 31.5, U_SPAN)
#: Gauss-Legendre orders tried per panel before giving up
_GL_ORDERS = (16, 32, 64, 128)
#: explicit Matsubara terms before switching to the integral completion
L_SWITCH = 1200
#: hard cap on the Matsubara index
L_HARD = 10**5


@dataclass(frozen=True)
class EnergyQuery:
    """One energy evaluation: geometry, material state, atom model, tolerances."""

    z: float
    graphene: GrapheneParams
    atom: object
    tol_k: float = 1e-6
    tol_sum: float = 1e-6

    def __post_init__(self):
        if not self.z > 0:
            raise ValidationError(f"z must be > 0, got {self.z}")
        for name in ("tol_k", "tol_sum"):
            t = getattr(self, name)
            if not (0.0 < t < 1.0):
                raise ValidationError(f"{name} must be in (0, 1), got {t}")

    @property
    def sigma_tol(self):
        """Landau-sum tolerance used for all conductivity samples."""
        return 0.1 * min(self.tol_k, self.tol_sum)


@dataclass(frozen=True)
class EnergyResult:
    """Energy in J (negative: attraction) with error diagnostics.

    quadrature_error and truncation_error are absolute estimates in J;
    l_terms_used counts explicitly evaluated Matsubara terms (for the T=0
    engine: frequency quadrature nodes).
    """

    U: float
    l_terms_used: int
    quadrature_error: float
    truncation_error: float


@dataclass(frozen=True)
class KIntegral:
    """Value and error estimate of the mapped kappa-integral."""

    value: float
    error: float
    n_nodes: int


def matsubara_frequency(l, T):
    """xi_l = 2*pi*l*k_B*T/hbar in rad/s; requires l >= 0 and T > 0."""
    if l < 0 or int(l) != l:
        raise ValidationError(f"l must be a nonnegative integer, got {l}")
    if not T > 0:
        raise ValidationError(f"T must be > 0, got {T}")
    return 2.0 * math.pi * K_B * T * float(l) / HBAR


@lru_cache(maxsize=32)
def _panel_rule(order):
    """Nodes and weights of the composite GL rule on the panel edges."""
    x, w = np.polynomial.legendre.leggauss(order)
    nodes, weights = [], []
    for a, b in zip(_PANEL_EDGES[:-1], _PANEL_EDGES[1:]):
        nodes.append(0.5 * (b - a) * x + 0.5 * (a + b))
        weights.append(0.5 * (b - a) * w)
    s = np.concatenate(nodes)
    wt = np.concatenate(weights)
    s.setflags(write=False)
    wt.setflags(write=False)
    return s, wt


def _forced_batch(s, u0, xi, z, r_ss, r_pp):
    # test seam: constant reflection coefficients instead of the sheet model
    u = u0 + s
    kappa = u / (2.0 * z)
    w = C_LIGHT * kappa / xi
    return np.exp(-s) * (r_ss - (2.0 * w * w - 1.0) * r_pp)


def k_integral(xi, q, *, sigma=None, forced_reflection=None):
    """Mapped radial integral I(xi) with adaptive panel quadrature.

    I(xi) = (1/4pi) int_{xi/c}^inf dkappa e^{-2 kappa z} [r_ss - (2 c^2
    kappa^2/xi^2 - 1) r_pp], evaluated as e^{-u0}/(8 pi z) times the
    integral over s = 2 kappa z - u0 in [0, U_SPAN].

    Parameters
    ----------
    xi : float
        imaginary frequency, > 0
    q : EnergyQuery
    sigma : ConductivitySample, optional
        reuse an existing sample (it is k-independent); computed from
        q.graphene when omitted
    forced_reflection : (float, float), optional
        constant (r_ss, r_pp) override, used by oracle tests

    Returns
    -------
    KIntegral

    Raises
    ------
    ConvergenceError
        if doubling the panel order up to the maximum never meets tol_k
    """
    if not xi > 0:
        raise ValidationError(f"k_integral requires xi > 0, got {xi}")
    u0 = 2.0 * xi * q.z / C_LIGHT
    scale = math.exp(-u0) / (8.0 * math.pi * q.z) if u0 < 745.0 else 0.0
    if scale == 0.0:
        return KIntegral(value=0.0, error=0.0, n_nodes=0)
    if forced_reflection is None and sigma is None:
        sigma = conductivity_sample(xi, q.graphene, q.sigma_tol)

    prev = None
    n_nodes = 0
    for order in _GL_ORDERS:
        s, w = _panel_rule(order)
        if forced_reflection is not None:
            vals = _forced_batch(s, u0, xi, q.z, *forced_reflection)
        else:
            vals = cp_kernel_batch(s, u0, xi, q.z, sigma.sigma_xx, sigma.sigma_xy)
        cur = float(np.dot(w, vals))
        n_nodes += s.size
        if prev is not None:
            err = abs(cur - prev)
            if err <= q.tol_k * max(abs(cur), 1e-300):
                return KIntegral(value=scale * cur, error=scale * err, n_nodes=n_nodes)
        prev = cur
    raise ConvergenceError(
        f"k-integral did not reach tol_k={q.tol_k} at xi={xi}, z={q.z} "
        f"(last delta {abs(cur - prev):.3e})"
    )


def zero_frequency_term(q):
    """Halved l = 0 Matsubara term, in J, via the analytic static limit.

    Equals -k_B T alpha(0) r_pp(0) / (16 pi eps0 z^3); the static r_pp is
    k-independent, so the k-integral int k^2 e^{-2kz} dk = 1/(4 z^3) is
    folded in exactly.
    """
    T = q.graphene.T
    if T == 0.0:
        return 0.0
    sigma0 = conductivity_sample(0.0, q.graphene, q.sigma_tol)
    r_pp0 = reflection_pair_static(1.0 / q.z, sigma0).r_pp
    a0 = alpha_static(q.atom)
    return -K_B * T * a0 * r_pp0 / (16.0 * math.pi * EPS0 * q.z**3)


def _matsubara_term(q, xi):
    """One l >= 1 summand (in J) and its quadrature error."""
    pref = K_B * q.graphene.T / (EPS0 * C_LIGHT**2)
    ki = k_integral(xi, q)
    a = alpha_imag(q.atom, xi)
    return pref * xi * xi * a * ki.value, pref * xi * xi * a * ki.error


def _integral_completion(q, xi1, l_from):
    """Midpoint integral over continuous l of the remaining Matsubara terms.

    Returns (tail value, error estimate). Uses the same panel scheme on
    w = u1*l measured from the switch point; the midpoint rule's
    Euler-Maclaurin error is O(u1^2) relative and is folded into the
    error estimate via the first correction term.
    """
    u1 = 2.0 * xi1 * q.z / C_LIGHT
    lam0 = l_from + 0.5

    def term_at(lam):
        t, _ = _matsubara_term(q, xi1 * lam)
        return t

    prev = None
    for order in _GL_ORDERS:
        s, w = _panel_rule(order)
        lam = lam0 + s / u1
        vals = np.array([term_at(la) for la in lam])
        cur = float(np.dot(w, vals)) / u1
        if prev is not None and abs(cur - prev) <= q.tol_sum * max(abs(cur), 1e-300):
            quad_err = abs(cur - prev)
            em_corr = (term_at(lam0 + 1.0) - term_at(lam0)) / 24.0
            return cur + em_corr, quad_err + abs(em_corr) * 0.1
        prev = cur
    raise ConvergenceError(
        f"Matsubara tail integral did not converge at z={q.z}, T={q.graphene.T}"
    )


def casimir_polder_energy(q):
    """Full finite-temperature energy U_T(z) < 0.

    Parameters
    ----------
    q : EnergyQuery
        q.graphene.T must be > 0 (use casimir_polder_energy_T0 at T = 0)

    Returns
    -------
    EnergyResult
    """
    T = q.graphene.T
    if not T > 0:
        raise ValidationError("casimir_polder_energy requires T > 0")
    xi1 = matsubara_frequency(1, T)
    U = zero_frequency_term(q)
    quad_err = 0.0
    trunc_err = None
    small_run = 0
    t_prev = None
    l = 0
    while l < L_HARD:
        l += 1
        t, qe = _matsubara_term(q, xi1 * l)
        U += t
        quad_err += qe
        small_run = small_run + 1 if abs(t) < q.tol_sum * abs(U) else 0
        if small_run >= 3:
            rho = abs(t / t_prev) if t_prev not in (None, 0.0) else 0.0
            if t == 0.0:
                trunc_err = 0.0
                break
            if rho < 1.0:
                tail = abs(t) * rho / (1.0 - rho)
                if tail <= q.tol_sum * abs(U):
                    trunc_err = tail
                    break
        if l >= L_SWITCH:
            tail, terr = _integral_completion(q, xi1, l)
            U += tail
            trunc_err = terr
            break
        t_prev = t
    if trunc_err is None:
        raise ConvergenceError(
            f"Matsubara sum not converged after {l} terms (z={q.z}, T={T})"
        )
    return EnergyResult(U=U, l_terms_used=l, quadrature_error=quad_err,
                        truncation_error=trunc_err)


def casimir_polder_energy_T0(q):
    """Zero-temperature energy: (hbar/2pi) int_0^inf dxi of the summand.

    The temperature field of q.graphene is ignored; conductivities use
    exact step occupations. Integration runs in v = 2 xi z/c over
    [0, U_SPAN] with the adaptive panel rule and tolerance tol_sum.
    """
    p0 = replace(q.graphene, T=0.0)
    q0 = EnergyQuery(z=q.z, graphene=p0, atom=q.atom, tol_k=q.tol_k, tol_sum=q.tol_sum)
    v_scale = C_LIGHT / (2.0 * q.z)
    pref = HBAR / (2.0 * math.pi) / (EPS0 * C_LIGHT**2) * v_scale

    def integrand(v):
        xi = v * v_scale
        ki = k_integral(xi, q0)
        a = alpha_imag(q0.atom, xi)
        return xi * xi * a * ki.value, xi * xi * a * ki.error

    prev = None
    nodes_used = 0
    for order in _GL_ORDERS:
        s, w = _panel_rule(order)
        pairs = [integrand(v) for v in s]
        vals = np.array([pq[0] for pq in pairs])
        errs = np.array([abs(pq[1]) for pq in pairs])
        cur = float(np.dot(w, vals))
        node_err = float(np.dot(w, errs))
        nodes_used = s.size
        if prev is not None and abs(cur - prev) <= q.tol_sum * max(abs(cur), 1e-300):
            return EnergyResult(
                U=pref * cur,
                l_terms_used=nodes_used,
                quadrature_error=pref * (abs(cur - prev) + node_err),
                truncation_error=abs(pref * cur) * math.exp(-U_SPAN),
            )
        prev = cur
    raise ConvergenceError(
        f"zero-temperature frequency integral did not reach tol_sum={q.tol_sum} "
        f"at z={q.z}, B={q.graphene.B}"
    )


def normalized_energy(q, reference="B0"):
    """Energy ratio U(q)/U(reference) with identical tolerances.

    reference = "B0":   denominator at B = 0 (documented fallback), same T.
    reference = "T0B0": denominator at T = 0 and B = 0.
    """
    if reference not in ("B0", "T0B0"):
        raise ValidationError(f"unknown reference '{reference}'")
    if q.graphene.T > 0:
        num = casimir_polder_energy(q).U
    else:
        num = casimir_polder_energy_T0(q).U
    q_ref = EnergyQuery(
        z=q.z,
        graphene=replace(q.graphene, B=0.0),
        atom=q.atom,
        tol_k=q.tol_k,
        tol_sum=q.tol_sum,
    )
    if reference == "B0" and q.graphene.T > 0:
        den = casimir_polder_energy(q_ref).U
    else:
        den = casimir_polder_energy_T0(q_ref).U
    return num / den
