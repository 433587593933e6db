"""Command-line surface: spectrum tables, verification, studies, sweeps.

Exit codes: 0 success, 1 a verification failed, 2 usage error.  All
output is deterministic (fixed seeds, fixed formatting) so repeated runs
diff clean.  A key=value config file can pre-populate any flag, and the
SLENDERSPEC_OUTDIR environment variable supplies a default directory for
--output paths given as bare filenames.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import checks, dynamics, experiments, profiles
from .spectra import EigenFamily, Mode, eigenvalues

_FMT = "{:.17g}"


class UsageError(Exception):
    pass


def _parse_krange(text):
    """'1..50' or '3' or '1,4,9' -> list of ints."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    if "," in text:
        return [int(p) for p in text.split(",")]
    return [int(text)]


def _resolve_output(path):
    if path is None:
        return None
    outdir = os.environ.get("SLENDERSPEC_OUTDIR")
    if outdir and not os.path.dirname(path):
        return os.path.join(outdir, path)
    return path


def _emit(text, path):
    path = _resolve_output(path)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _apply_config_defaults(argv):
    """Expand --config key=value files into leading defaults."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    try:
        path = argv[i + 1]
    except IndexError:
        raise UsageError("--config needs a file path")
    extra = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"bad config line: {line!r}")
            key, value = line.split("=", 1)
            extra.extend([f"--{key.strip()}", value.strip()])
    # flags from the command line come last and win over config values;
    # insert right after the subcommand so argparse routes them correctly
    rest = argv[:i] + argv[i + 2:]
    return rest[:2] + extra + rest[2:]


def cmd_spectrum(args):
    ks = _parse_krange(args.k)
    direction = args.direction
    setting = args.setting
    methods = args.methods.split(",")
    rows = ["setting,direction,method,delta,eps,k,lambda"]
    for method in methods:
        delta = args.delta if method == "delta_reg" else None
        fam = EigenFamily(setting, direction, method, delta=delta)
        lam = eigenvalues(fam, args.eps, np.array(ks))
        for k, v in zip(ks, np.atleast_1d(lam)):
            dcol = _FMT.format(delta) if delta is not None else ""
            rows.append(f"{setting},{direction},{method},{dcol},"
                        f"{_FMT.format(args.eps)},{k},{_FMT.format(v)}")
    _emit("\n".join(rows) + "\n", args.output)
    return 0


def cmd_verify(args):
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    ok = True
    out = []
    for r in checks.run_suites(names):
        out.extend(r.lines())
        ok = ok and r.ok
    _emit("\n".join(out) + "\n", args.output)
    return 0 if ok else 1


def cmd_converge(args):
    eps_grid = np.geomspace(args.eps_max, args.eps_min, args.eps_points)
    report = experiments.convergence_study(
        args.setting, args.method, args.regularity, eps_grid=eps_grid,
        seed=args.seed, delta=args.delta, k_max=args.k_max)
    text = report.to_csv() if args.format == "csv" else report.to_json() + "\n"
    _emit(text, args.output)
    return 0


def cmd_delta_opt(args):
    d = experiments.optimal_delta(args.setting, args.ratio)
    _emit(f"{d:.10f}\n", args.output)
    return 0


def cmd_dynamics(args):
    if args.energy_mode is not None:
        state = dynamics.single_mode_state(args.eps, args.k_max, args.energy_mode)
        dt = args.dt or 0.5 * dynamics.max_stable_dt(args.eps, args.k_max)
        rows = ["step,t,energy"]
        for i in range(args.steps + 1):
            rows.append(f"{i},{_FMT.format(state.t)},{_FMT.format(dynamics.energy(state))}")
            state = dynamics.step(state, dt, args.scheme)
        _emit("\n".join(rows) + "\n", args.output)
        return 0
    k_list = _parse_krange(args.sweep)
    rows = ["eps,K_max,ds,dt_max_analytic,dt_max_empirical"]
    for eps, k_max, ds, dt_a, dt_e in dynamics.stability_sweep(args.eps, k_list):
        rows.append(f"{_FMT.format(eps)},{k_max},{_FMT.format(ds)},"
                    f"{_FMT.format(dt_a)},{_FMT.format(dt_e)}")
    _emit("\n".join(rows) + "\n", args.output)
    return 0


def cmd_profile(args):
    mode = Mode(args.k, args.eps)
    sol = profiles.solve_mode(args.direction, mode)
    r = np.linspace(args.eps, args.eps * args.r_mult, args.points)
    prof = profiles.evaluate_profile(sol, r)
    if args.direction == "laplace_scalar":
        cols = ["U", "p"]
    elif args.direction == "tangential":
        cols = ["U_r", "U_z", "p"]
    else:
        cols = ["U_r", "U_theta", "U_z", "p"]
    header = "r," + ",".join(f"{c}_re,{c}_im" for c in cols)
    rows = [header]
    for i, ri in enumerate(r):
        vals = []
        for c in cols:
            v = prof[c][i]
            vals.extend([_FMT.format(v.real), _FMT.format(v.imag)])
        rows.append(_FMT.format(ri) + "," + ",".join(vals))
    _emit("\n".join(rows) + "\n", args.output)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="slenderspec",
        description="Spectra of the slender-fiber inverse problem: tables, "
                    "verification suites, convergence and stability studies.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="eigenvalue tables as CSV")
    sp.add_argument("--setting", choices=["laplace", "stokes"], required=True)
    sp.add_argument("--direction",
                    choices=["longitudinal", "tangential", "normal"], required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--k", default="1..50", help="k range, e.g. 1..50 or 3 or 1,4,9")
    sp.add_argument("--methods", default="pde,sbt,delta_reg")
    sp.add_argument("--delta", type=float, default=2.0)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_spectrum)

    vp = sub.add_parser("verify", help="run a verification suite")
    vp.add_argument("suite", choices=list(checks.SUITES) + ["all"])
    vp.add_argument("--output")
    vp.set_defaults(func=cmd_verify)

    cp = sub.add_parser("converge", help="convergence-rate study")
    cp.add_argument("--setting", choices=["laplace", "stokes"], required=True)
    cp.add_argument("--method", choices=["sbt_truncated", "delta_reg"], required=True)
    cp.add_argument("--regularity", choices=["H1", "H2"], default="H1")
    cp.add_argument("--eps-max", type=float, default=10**-1.5)
    cp.add_argument("--eps-min", type=float, default=1e-3)
    cp.add_argument("--eps-points", type=int, default=6)
    cp.add_argument("--seed", type=int, default=11)
    cp.add_argument("--delta", type=float, default=2.0)
    cp.add_argument("--k-max", type=int, default=None)
    cp.add_argument("--format", choices=["json", "csv"], default="json")
    cp.add_argument("--output")
    cp.set_defaults(func=cmd_converge)

    dp = sub.add_parser("delta-opt", help="optimal regularization parameter")
    dp.add_argument("--setting", choices=["laplace", "stokes"], required=True)
    dp.add_argument("--ratio", type=float, required=True)
    dp.add_argument("--output")
    dp.set_defaults(func=cmd_delta_opt)

    yp = sub.add_parser("dynamics", help="stability sweep or per-step energy CSV")
    yp.add_argument("--eps", type=float, required=True)
    yp.add_argument("--sweep", default="8,16,32,64,128",
                    help="K_max values for the stability sweep")
    yp.add_argument("--energy-mode", type=int, default=None,
                    help="emit per-step energy of this single mode instead")
    yp.add_argument("--k-max", type=int, default=64)
    yp.add_argument("--steps", type=int, default=200)
    yp.add_argument("--dt", type=float, default=None)
    yp.add_argument("--scheme", choices=["explicit_euler", "implicit_exact"],
                    default="implicit_exact")
    yp.add_argument("--output")
    yp.set_defaults(func=cmd_dynamics)

    pp = sub.add_parser("profile", help="radial velocity/pressure profiles as CSV")
    pp.add_argument("--direction",
                    choices=["laplace_scalar", "tangential", "normal"], required=True)
    pp.add_argument("--eps", type=float, required=True)
    pp.add_argument("--k", type=int, required=True)
    pp.add_argument("--r-mult", type=float, default=10.0)
    pp.add_argument("--points", type=int, default=100)
    pp.add_argument("--output")
    pp.set_defaults(func=cmd_profile)
    return p


def main(argv=None):
    argv = list(sys.argv if argv is None else ["slenderspec"] + list(argv))
    try:
        argv = _apply_config_defaults(argv)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser = build_parser()
    try:
        args = parser.parse_args(argv[1:])
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
