"""Atomic electric polarizability on the imaginary-frequency axis.

Two model variants:

* ``LorentzPolarizability``: single-oscillator surrogate with the closed
  form alpha(i xi) = alpha0 * omega0^2 / (omega0^2 + xi^2). This is the
  default atom model for all acceptance runs; alpha0 and omega0 are
  configurable (the shipped defaults are of the order of the static
  polarizability and first strong resonance of an alkali atom, they are
  placeholders rather than calibrated atomic data).

* ``TabulatedPolarizability``: a user-supplied table of Im alpha(omega)
  transformed to the imaginary axis,

      alpha(i xi) = (2/pi) * int_0^inf omega Im alpha(omega) /
                                        (omega^2 + xi^2) domega.

  The integral over the tabulated range is done exactly on the
  piecewise-linear interpolant of Im alpha (per-segment antiderivatives,
  no sampling error near omega ~ xi). Beyond the last grid point
  Im alpha is extrapolated as A * omega^(-p) with p fitted to the last
  decade of data and the tail integral evaluated in closed form.

Table format (UTF-8 text): '#' starts a comment; data lines are
"omega_rad_per_s im_alpha_SI" with ASCII floats, omega strictly
ascending, at least 8 rows. A header pragma "#units: eV au" switches the
columns to (hbar*omega in eV, Im alpha in atomic units); the conversion
1 au = 1.6488e-41 F m^2 is applied at load.
"""
import io
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .constants import ALPHA_AU, EV, HBAR
from .exceptions import ValidationError

__all__ = [
    "LorentzPolarizability",
    "TabulatedPolarizability",
    "PolarizabilityModel",
    "load_table",
    "alpha_imag",
    "alpha_static",
]

_MIN_ROWS = 8
_MIN_TAIL_EXPONENT = 2.05


@dataclass(frozen=True)
class LorentzPolarizability:
    """Single Lorentz oscillator: alpha(i xi) = alpha0 w0^2/(w0^2 + xi^2)."""

    alpha0: float
    omega0: float

    def __post_init__(self):
        if not self.alpha0 > 0:
            raise ValidationError(f"alpha0 must be > 0, got {self.alpha0}")
        if not self.omega0 > 0:
            raise ValidationError(f"omega0 must be > 0, got {self.omega0}")

    def alpha_imag(self, xi):
        if xi < 0:
            raise ValidationError(f"xi must be >= 0, got {xi}")
        w2 = self.omega0 * self.omega0
        # grouped so the static limit returns alpha0 exactly
        return self.alpha0 * (w2 / (w2 + xi * xi))


@dataclass(frozen=True, eq=False)
class TabulatedPolarizability:
    """Tabulated Im alpha(omega) with a fitted power-law tail."""

    omega: np.ndarray = field(repr=False)
    im_alpha: np.ndarray = field(repr=False)
    tail_exponent: float = 0.0
    tail_coeff: float = 0.0

    def alpha_imag(self, xi):
        if xi < 0:
            raise ValidationError(f"xi must be >= 0, got {xi}")
        core = _segment_integral(self.omega, self.im_alpha, xi)
        tail = _tail_integral(self.omega[-1], self.tail_coeff, self.tail_exponent, xi)
        return (2.0 / math.pi) * (core + tail)


#: union of the two variants; anything with an alpha_imag(xi) method works
PolarizabilityModel = (LorentzPolarizability, TabulatedPolarizability)


def alpha_imag(model, xi):
    """alpha(i xi) in F m^2 for either model variant."""
    return model.alpha_imag(xi)


def alpha_static(model):
    """alpha(0), the static polarizability in F m^2."""
    return model.alpha_imag(0.0)


def _segment_integral(omega, im_alpha, xi):
    """Exact integral of the piecewise-linear interpolant of
    omega' * Im alpha(omega') / (omega'^2 + xi^2) over the grid."""
    w0 = omega[:-1]
    w1 = omega[1:]
    b = (im_alpha[1:] - im_alpha[:-1]) / (w1 - w0)
    a = im_alpha[:-1] - b * w0
    if xi == 0.0:
        # integrand reduces to (a + b w)/w
        return float(np.sum(a * np.log(w1 / w0) + b * (w1 - w0)))
    # integrand = b + (a w - b xi^2)/(w^2 + xi^2)
    x2 = xi * xi
    log_term = 0.5 * np.log((w1 * w1 + x2) / (w0 * w0 + x2))
    atan_term = np.arctan(w1 / xi) - np.arctan(w0 / xi)
    return float(np.sum(b * (w1 - w0) + a * log_term - b * xi * atan_term))


def _tail_integral(omega_max, A, p, xi):
    """int_{omega_max}^inf A w^(1-p) / (w^2 + xi^2) dw."""
    if A == 0.0:
        return 0.0
    if xi <= 0.8 * omega_max:
        # geometric series in (xi/omega_max)^2, absolutely convergent
        total = 0.0
        ratio2 = (xi / omega_max) ** 2
        term_scale = A * omega_max ** (-p)
        m = 0
        factor = 1.0
        while True:
            term = factor * term_scale / (p + 2 * m)
            total += term
            if abs(term) < 1e-16 * abs(total) or m > 200:
                return total
            m += 1
            factor *= -ratio2
    # near/above the grid edge: quadrature in t = omega_max/omega on (0, 1]
    t, wt = np.polynomial.legendre.leggauss(64)
    t = 0.5 * (t + 1.0)
    wt = 0.5 * wt
    vals = A * (omega_max / t) ** (1.0 - p) / ((omega_max / t) ** 2 + xi * xi) * omega_max / (t * t)
    return float(np.sum(wt * vals))


def _fit_tail(omega, im_alpha):
    """Least-squares power-law fit Im alpha ~ A w^(-p) over the last decade."""
    w_hi = omega[-1]
    mask = omega >= w_hi / 10.0
    if np.count_nonzero(mask) < 3:
        mask = np.zeros_like(omega, dtype=bool)
        mask[-3:] = True
    w = omega[mask]
    y = im_alpha[mask]
    if np.any(y <= 0):
        raise ValidationError(
            "tail fit: Im alpha must be > 0 over the last decade of the table"
        )
    slope, intercept = np.polyfit(np.log(w), np.log(y), 1)
    p = -float(slope)
    if p <= _MIN_TAIL_EXPONENT:
        raise ValidationError(
            f"tail fit: exponent p={p:.3f} <= {_MIN_TAIL_EXPONENT}; the "
            "transform integral would not converge (table too short?)"
        )
    # anchor the amplitude at the last grid point
    A = float(y[-1] * w[-1] ** p)
    return p, A


def load_table(source):
    """Parse a polarizability table into a TabulatedPolarizability.

    Parameters
    ----------
    source : path, bytes, or file-like
        UTF-8 text in the documented two-column format

    Raises
    ------
    ValidationError
        on malformed lines (with line number), non-ascending omega,
        duplicate omega, negative Im alpha, or fewer than 8 rows
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            raw = fh.read()
    elif isinstance(source, bytes):
        raw = source
    else:
        raw = source.read()
        if isinstance(raw, str):
            raw = raw.encode("utf-8")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValidationError(f"table is not valid UTF-8: {exc}") from None

    unit_mode = "si"
    omegas = []
    ims = []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            pragma = stripped[1:].strip().lower()
            if pragma.startswith("units:"):
                mode = pragma[len("units:"):].strip()
                if mode == "ev au":
                    unit_mode = "ev_au"
                elif mode in ("si", "rad_per_s si"):
                    unit_mode = "si"
                else:
                    raise ValidationError(f"line {lineno}: unknown units pragma '{mode}'")
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ValidationError(
                f"line {lineno}: expected two columns, got {len(parts)}"
            )
        try:
            w, im = float(parts[0]), float(parts[1])
        except ValueError:
            raise ValidationError(f"line {lineno}: cannot parse floats from '{stripped}'") from None
        if unit_mode == "ev_au":
            w = w * EV / HBAR
            im = im * ALPHA_AU
        if im < 0:
            raise ValidationError(f"line {lineno}: Im alpha must be >= 0, got {im}")
        if omegas:
            if w == omegas[-1]:
                raise ValidationError(f"line {lineno}: duplicate omega {w}")
            if w < omegas[-1]:
                raise ValidationError(
                    f"line {lineno}: omega must be strictly ascending "
                    f"({w} after {omegas[-1]})"
                )
        if w <= 0:
            raise ValidationError(f"line {lineno}: omega must be > 0, got {w}")
        omegas.append(w)
        ims.append(im)
    if len(omegas) < _MIN_ROWS:
        raise ValidationError(
            f"table has {len(omegas)} data rows, at least {_MIN_ROWS} required"
        )
    omega = np.asarray(omegas, dtype=np.float64)
    im_alpha = np.asarray(ims, dtype=np.float64)
    p, A = _fit_tail(omega, im_alpha)
    omega.setflags(write=False)
    im_alpha.setflags(write=False)
    return TabulatedPolarizability(
        omega=omega, im_alpha=im_alpha, tail_exponent=p, tail_coeff=A
    )
