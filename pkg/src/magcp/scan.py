"""Config-driven parameter sweeps over (z, B, T) with tabular output.

Config format: flat "key = value" UTF-8 text, '#' comments. Grids are a
single number, a comma list, a linear range "start:stop:step" (inclusive
endpoints) or a log range "log<start>:<stop>:<npoints>". All units SI
except mu_c_eV (eV) and B values (tesla). Recognized keys:

    z_grid, B_grid, T_list           grids (m, T, K; T 0 allowed)
    mu_c_eV, tau_s, v_F_m_s          graphene parameters
    atom                             "lorentz" or a table file path
    alpha0_F_m2, omega0_rad_s        Lorentz surrogate parameters
    normalization                    none | B0 | T0B0
    tol_k, tol_sum                   relative tolerances
    output, format                   destination path, csv | json

Rows are emitted z-major, then B, then T, regardless of how many worker
processes computed them, so identical configs produce byte-identical
files. Rows at B = 0 are served by the zero-field fallback and carry a
flag in the JSON output (the CSV column set is fixed).
"""
import concurrent.futures
import dataclasses
import io
import json
import math
import os
import sys

import numpy as np

from .conductivity import GrapheneParams
from .constants import EV
from .energy import EnergyQuery, casimir_polder_energy, casimir_polder_energy_T0
from .exceptions import MagcpError, ValidationError
from .polarizability import LorentzPolarizability, load_table

__all__ = [
    "ScanConfig",
    "ScanRow",
    "parse_config",
    "run_scan",
    "detect_discontinuities",
    "emit",
    "CSV_HEADER",
    "DEFAULT_ALPHA0",
    "DEFAULT_OMEGA0",
]

CSV_HEADER = "z_m,B_T,T_K,U_J,U_norm,err_quad_J,err_trunc_J,l_terms"

#: Lorentz surrogate defaults: static polarizability of the order of an
#: alkali atom (~320 atomic units) and a first-resonance frequency scale.
DEFAULT_ALPHA0 = 5.26e-39
DEFAULT_OMEGA0 = 2.41e15

_DEFAULTS = {
    "mu_c_eV": 0.115,
    "tau_s": 1.84e-13,
    "v_F_m_s": 1e6,
    "atom": "lorentz",
    "alpha0_F_m2": DEFAULT_ALPHA0,
    "omega0_rad_s": DEFAULT_OMEGA0,
    "normalization": "none",
    "tol_k": 1e-6,
    "tol_sum": 1e-6,
    "output": None,
    "format": "csv",
}
_GRID_KEYS = ("z_grid", "B_grid", "T_list")
_KNOWN_KEYS = set(_DEFAULTS) | set(_GRID_KEYS)


@dataclasses.dataclass(frozen=True)
class ScanConfig:
    """Validated sweep specification."""

    z_grid: tuple
    B_grid: tuple
    T_list: tuple
    graphene: GrapheneParams  # B and T fields are placeholders
    atom: object
    normalization: str
    tol_k: float
    tol_sum: float
    output: str
    fmt: str


@dataclasses.dataclass(frozen=True)
class ScanRow:
    """One grid point; U_norm is None unless normalization was requested."""

    z: float
    B: float
    T: float
    U: float
    U_norm: object
    err_quad: float
    err_trunc: float
    l_terms: int
    b0_fallback: bool


def _parse_range(key, text):
    """Grid grammar: scalar, comma list, 'a:b:step', or 'log a:b:n'."""
    text = text.strip()
    if text.lower().startswith("log"):
        body = text[3:]
        parts = body.split(":")
        if len(parts) != 3:
            raise ValidationError(f"{key}: log range needs 'log<start>:<stop>:<npoints>', got '{text}'")
        try:
            start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ValidationError(f"{key}: cannot parse log range '{text}'") from None
        if start <= 0 or stop <= 0 or n < 1:
            raise ValidationError(f"{key}: log range requires positive endpoints and npoints >= 1")
        return tuple(float(v) for v in np.geomspace(start, stop, n))
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"{key}: range needs 'start:stop:step', got '{text}'")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            raise ValidationError(f"{key}: cannot parse range '{text}'") from None
        if step <= 0 or stop < start:
            raise ValidationError(f"{key}: range requires step > 0 and stop >= start")
        n = int(round((stop - start) / step)) + 1
        if abs(start + (n - 1) * step - stop) > 1e-9 * max(step, abs(stop)):
            raise ValidationError(f"{key}: step does not divide the range '{text}'")
        return tuple(float(v) for v in np.linspace(start, stop, n))
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise ValidationError(f"{key}: cannot parse values '{text}'") from None


def parse_config(source):
    """Parse and validate a scan config.

    Parameters
    ----------
    source : path, bytes, str content, or file-like

    Returns
    -------
    ScanConfig

    Raises
    ------
    ValidationError
        naming the offending key
    """
    if isinstance(source, (str, os.PathLike)) and "\n" not in str(source):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")

    raw = {}
    for lineno, line in enumerate(io.StringIO(text), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValidationError(f"line {lineno}: expected 'key = value', got '{stripped}'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ValidationError(f"line {lineno}: unknown key '{key}'")
        if key in raw:
            raise ValidationError(f"line {lineno}: duplicate key '{key}'")
        raw[key] = value

    for key in _GRID_KEYS:
        if key not in raw:
            raise ValidationError(f"missing required key '{key}'")

    z_grid = _parse_range("z_grid", raw["z_grid"])
    B_grid = _parse_range("B_grid", raw["B_grid"])
    T_list = _parse_range("T_list", raw["T_list"])
    if not z_grid or min(z_grid) <= 0:
        raise ValidationError("z_grid: all distances must be > 0")
    if not B_grid or min(B_grid) < 0:
        raise ValidationError("B_grid: fields must be >= 0")
    if not T_list or min(T_list) < 0:
        raise ValidationError("T_list: temperatures must be >= 0")

    def fval(key):
        v = raw.get(key, _DEFAULTS[key])
        try:
            return float(v)
        except (TypeError, ValueError):
            raise ValidationError(f"{key}: expected a number, got '{v}'") from None

    mu_c = fval("mu_c_eV") * EV
    tau = fval("tau_s")
    v_F = fval("v_F_m_s")
    try:
        graphene = GrapheneParams(v_F=v_F, tau=tau, mu_c=mu_c, B=0.0, T=0.0)
    except ValidationError as exc:
        raise ValidationError(f"graphene parameters: {exc}") from None

    atom_spec = raw.get("atom", _DEFAULTS["atom"]).strip()
    if atom_spec == "lorentz":
        atom = LorentzPolarizability(alpha0=fval("alpha0_F_m2"), omega0=fval("omega0_rad_s"))
    else:
        if not os.path.exists(atom_spec):
            raise ValidationError(f"atom: table file '{atom_spec}' not found")
        atom = load_table(atom_spec)

    normalization = raw.get("normalization", _DEFAULTS["normalization"]).strip()
    if normalization not in ("none", "B0", "T0B0"):
        raise ValidationError(f"normalization: must be none|B0|T0B0, got '{normalization}'")

    tol_k = fval("tol_k")
    tol_sum = fval("tol_sum")
    for name, t in (("tol_k", tol_k), ("tol_sum", tol_sum)):
        if not (0.0 < t < 1.0):
            raise ValidationError(f"{name}: must be in (0, 1), got {t}")

    fmt = raw.get("format", _DEFAULTS["format"]).strip()
    if fmt not in ("csv", "json"):
        raise ValidationError(f"format: must be csv or json, got '{fmt}'")

    return ScanConfig(
        z_grid=z_grid,
        B_grid=B_grid,
        T_list=T_list,
        graphene=graphene,
        atom=atom,
        normalization=normalization,
        tol_k=tol_k,
        tol_sum=tol_sum,
        output=raw.get("output", _DEFAULTS["output"]),
        fmt=fmt,
    )


def _energy_at(cfg, z, B, T):
    """EnergyResult for one grid point, routing T = 0 to the T0 engine."""
    graphene = dataclasses.replace(cfg.graphene, B=B, T=T)
    q = EnergyQuery(z=z, graphene=graphene, atom=cfg.atom,
                    tol_k=cfg.tol_k, tol_sum=cfg.tol_sum)
    if T == 0.0:
        return casimir_polder_energy_T0(q)
    return casimir_polder_energy(q)


def _reference_energy(cfg, z, T):
    """Normalization denominator for a (z, T) pair."""
    if cfg.normalization == "B0" and T > 0.0:
        return _energy_at(cfg, z, 0.0, T).U
    return _energy_at(cfg, z, 0.0, 0.0).U


def _compute_row(args):
    cfg, z, B, T = args
    try:
        res = _energy_at(cfg, z, B, T)
        return (z, B, T, res, None)
    except MagcpError as exc:
        return (z, B, T, None, f"{type(exc).__name__}: {exc}")


def run_scan(cfg, jobs=1, progress=None):
    """Execute the sweep; returns (rows, failures).

    rows are ScanRow in deterministic z-major, B, T order; failures is a
    list of (z, B, T, message) for grid points that raised, which are
    excluded from rows.
    """
    points = [(z, B, T) for z in cfg.z_grid for B in cfg.B_grid for T in cfg.T_list]
    refs = {}
    if cfg.normalization != "none":
        for z in cfg.z_grid:
            for T in cfg.T_list:
                key = (z, T) if cfg.normalization == "B0" else (z,)
                if key not in refs:
                    refs[key] = _reference_energy(cfg, z, T)

    tasks = [(cfg, z, B, T) for (z, B, T) in points]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_compute_row, tasks, chunksize=4))
    else:
        results = [_compute_row(t) for t in tasks]

    rows, failures = [], []
    for z, B, T, res, err in results:
        if err is not None:
            failures.append((z, B, T, err))
            continue
        if cfg.normalization == "none":
            u_norm = None
        else:
            key = (z, T) if cfg.normalization == "B0" else (z,)
            u_norm = res.U / refs[key]
        rows.append(ScanRow(
            z=z, B=B, T=T, U=res.U, U_norm=u_norm,
            err_quad=res.quadrature_error, err_trunc=res.truncation_error,
            l_terms=res.l_terms_used, b0_fallback=(B == 0.0),
        ))
        if progress is not None:
            progress(len(rows) + len(failures), len(points))
    return rows, failures


def detect_discontinuities(rows, threshold=5.0):
    """Locate jumps in U along a uniform B sweep at fixed (z, T).

    Parameters
    ----------
    rows : sequence of ScanRow
        same z and T, sorted ascending in B with uniform spacing
    threshold : float
        a step is a jump when |dU| > threshold * median(|dU|)

    Returns
    -------
    list of float
        B midpoints of the jump steps; empty for smooth or constant data
    """
    if len(rows) < 3:
        return []
    zs = {r.z for r in rows}
    ts = {r.T for r in rows}
    if len(zs) != 1 or len(ts) != 1:
        raise ValidationError("detect_discontinuities requires fixed (z, T) rows")
    b = np.array([r.B for r in rows])
    if np.any(np.diff(b) <= 0):
        raise ValidationError("rows must be sorted ascending in B")
    steps = np.diff(b)
    if not np.allclose(steps, steps[0], rtol=1e-6):
        raise ValidationError("B grid must be uniform")
    du = np.diff(np.array([r.U for r in rows]))
    med = float(np.median(np.abs(du)))
    hits = np.abs(du) > threshold * med
    return [float(0.5 * (b[i] + b[i + 1])) for i in np.nonzero(hits)[0]]


def _fmt(x):
    """12 significant digits, reproducible across runs."""
    return f"{x:.11e}"


def _row_record(row):
    return {
        "z_m": _fmt(row.z),
        "B_T": _fmt(row.B),
        "T_K": _fmt(row.T),
        "U_J": _fmt(row.U),
        "U_norm": _fmt(row.U_norm) if row.U_norm is not None else "",
        "err_quad_J": _fmt(row.err_quad),
        "err_trunc_J": _fmt(row.err_trunc),
        "l_terms": row.l_terms,
        "b0_fallback": row.b0_fallback,
    }


def emit(rows, fmt, destination):
    """Serialize rows as CSV (fixed header) or JSON (array of objects).

    destination may be a path or a text file-like object. Identical rows
    produce byte-identical output.
    """
    if fmt not in ("csv", "json"):
        raise ValidationError(f"format must be csv or json, got '{fmt}'")
    own = isinstance(destination, (str, os.PathLike))
    fh = open(destination, "w", encoding="utf-8", newline="") if own else destination
    try:
        if fmt == "csv":
            fh.write(CSV_HEADER + "\n")
            for row in rows:
                rec = _row_record(row)
                fh.write(",".join([
                    rec["z_m"], rec["B_T"], rec["T_K"], rec["U_J"], rec["U_norm"],
                    rec["err_quad_J"], rec["err_trunc_J"], str(rec["l_terms"]),
                ]) + "\n")
        else:
            json.dump([_row_record(r) for r in rows], fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise MagcpError(f"cannot write {destination}: {exc}") from exc
    finally:
        if own:
            fh.close()
