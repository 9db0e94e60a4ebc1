"""Command-line interface: scan, predict-crossings, energy.

Exit code 0 means every requested computation succeeded; scan returns 1
if any grid point failed. The default worker count for scans honors the
MAGCP_JOBS environment variable.
"""
import argparse
import dataclasses
import json
import os
import sys

from .conductivity import GrapheneParams, predict_crossings
from .constants import E_CHARGE, EV, HBAR
from .energy import (EnergyQuery, casimir_polder_energy,
                     casimir_polder_energy_T0, normalized_energy)
from .exceptions import MagcpError
from .polarizability import LorentzPolarizability, load_table
from .scan import (DEFAULT_ALPHA0, DEFAULT_OMEGA0, detect_discontinuities,
                   emit, parse_config, run_scan)

JOBS_ENV = "MAGCP_JOBS"


def _default_jobs():
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _add_graphene_args(p):
    p.add_argument("--mu-c", type=float, default=0.115, help="chemical potential in eV")
    p.add_argument("--tau", type=float, default=1.84e-13, help="scattering time in s")
    p.add_argument("--v-f", type=float, default=1e6, help="Fermi velocity in m/s")


def _add_atom_args(p):
    p.add_argument("--alpha0", type=float, default=DEFAULT_ALPHA0,
                   help="Lorentz static polarizability in F m^2")
    p.add_argument("--omega0", type=float, default=DEFAULT_OMEGA0,
                   help="Lorentz resonance in rad/s")
    p.add_argument("--atom-table", default=None,
                   help="path to a tabulated Im alpha file (overrides the Lorentz model)")


def _atom_from_args(args):
    if args.atom_table:
        return load_table(args.atom_table)
    return LorentzPolarizability(alpha0=args.alpha0, omega0=args.omega0)


def _cmd_scan(args):
    cfg = parse_config(args.config)
    if args.tol_k is not None or args.tol_sum is not None:
        cfg = dataclasses.replace(
            cfg,
            tol_k=args.tol_k if args.tol_k is not None else cfg.tol_k,
            tol_sum=args.tol_sum if args.tol_sum is not None else cfg.tol_sum,
        )
    out = args.out or cfg.output
    fmt = args.format or cfg.fmt

    rows, failures = run_scan(cfg, jobs=args.jobs)

    # per-cut discontinuity summary on uniform B sweeps with enough points
    summary_stream = sys.stdout if out else sys.stderr
    for z in cfg.z_grid:
        for T in cfg.T_list:
            cut = [r for r in rows if r.z == z and r.T == T]
            cut.sort(key=lambda r: r.B)
            if len(cut) >= 8:
                try:
                    jumps = detect_discontinuities(cut)
                except MagcpError:
                    continue
                jtxt = ", ".join(f"{b:.4f}" for b in jumps) if jumps else "none"
                print(f"# z={z:.3e} m T={T:g} K discontinuities: {jtxt}",
                      file=summary_stream)

    if out:
        emit(rows, fmt, out)
        print(f"# wrote {len(rows)} rows to {out}", file=sys.stdout)
    else:
        emit(rows, fmt, sys.stdout)

    for z, B, T, msg in failures:
        print(f"# FAILED z={z:.3e} B={B:.3f} T={T:g}: {msg}", file=sys.stderr)
    return 1 if failures else 0


def _cmd_predict_crossings(args):
    p = GrapheneParams(v_F=args.v_f, tau=1.84e-13, mu_c=args.mu_c * EV, B=0.0, T=0.0)
    fields = predict_crossings(p, (args.b_min, args.b_max))
    b1 = p.mu_c**2 / (2.0 * HBAR * E_CHARGE * p.v_F**2)
    print("n,B_T")
    for b in fields:
        print(f"{round(b1 / b)},{b:.6f}")
    return 0


def _cmd_energy(args):
    graphene = GrapheneParams(v_F=args.v_f, tau=args.tau, mu_c=args.mu_c * EV,
                              B=args.B, T=args.T)
    q = EnergyQuery(z=args.z, graphene=graphene, atom=_atom_from_args(args),
                    tol_k=args.tol_k or 1e-6, tol_sum=args.tol_sum or 1e-6)
    if args.T == 0.0:
        res = casimir_polder_energy_T0(q)
    else:
        res = casimir_polder_energy(q)
    payload = {
        "z_m": args.z,
        "B_T": args.B,
        "T_K": args.T,
        "U_J": res.U,
        "err_quad_J": res.quadrature_error,
        "err_trunc_J": res.truncation_error,
        "l_terms": res.l_terms_used,
    }
    if args.normalize != "none":
        payload["U_norm"] = normalized_energy(q, reference=args.normalize)
        payload["normalization"] = args.normalize
    print(json.dumps(payload))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magcp",
        description="Casimir-Polder energy of an atom above magnetized graphene",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("scan", help="run a config-driven (z, B, T) sweep")
    ps.add_argument("--config", required=True, help="path to the scan config")
    ps.add_argument("--out", default=None, help="output path (default: stdout)")
    ps.add_argument("--format", choices=("csv", "json"), default=None)
    ps.add_argument("--jobs", type=int, default=_default_jobs(),
                    help=f"worker processes (default: ${JOBS_ENV} or 1)")
    ps.add_argument("--tol-k", type=float, default=None)
    ps.add_argument("--tol-sum", type=float, default=None)
    ps.set_defaults(func=_cmd_scan)

    pc = sub.add_parser("predict-crossings",
                        help="fields where a Landau level crosses mu_c")
    pc.add_argument("--mu-c", type=float, required=True, help="chemical potential in eV")
    pc.add_argument("--b-max", type=float, required=True, help="upper field in T")
    pc.add_argument("--b-min", type=float, default=0.05, help="lower field in T")
    pc.add_argument("--v-f", type=float, default=1e6, help="Fermi velocity in m/s")
    pc.set_defaults(func=_cmd_predict_crossings)

    pe = sub.add_parser("energy", help="single-point energy")
    pe.add_argument("--z", type=float, required=True, help="distance in m")
    pe.add_argument("--B", type=float, required=True, help="field in T (0 = fallback)")
    pe.add_argument("--T", type=float, required=True, help="temperature in K (0 = T0 engine)")
    _add_graphene_args(pe)
    _add_atom_args(pe)
    pe.add_argument("--tol-k", type=float, default=None)
    pe.add_argument("--tol-sum", type=float, default=None)
    pe.add_argument("--normalize", choices=("none", "B0", "T0B0"), default="none")
    pe.set_defaults(func=_cmd_energy)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MagcpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
