"""Command-line front end.

    switchwave simulate-pointwise --a 1 --ic sine --grid 64 --tmax 100 --out energy.csv
    switchwave simulate-boundary --mu1 5 --mu2 2 --out energy.csv --json summary.json
    switchwave simulate-internal --b1 1 --b2 3 --tau 1 --tstar 4 --grid 256 --tmax 60
    switchwave stability-region --system boundary --mu1-range -4:4:0.1 --mu2-range -4:4:0.1 --out region.csv
    switchwave predict-rate --system pointwise --a 1
    switchwave cross-validate --system boundary --mu1 5 --mu2 2 --grids 64,128,256

Without ``--json`` the JSON summary goes to stdout.
"""

from __future__ import annotations

import argparse
import math
import sys
from decimal import Decimal

import numpy as np

from . import analysis, spectral
from .fd import (b2_threshold, delayed_window_bound_check, fd_cross_validate,
                 make_fd_config, measure_contraction, run_fd)


def parse_range(text: str) -> list[float]:
    """``lo:hi:step`` inclusive of ``hi``; decimal arithmetic keeps 0.1 steps exact."""
    try:
        lo, hi, step = (Decimal(p) for p in text.split(":"))
    except Exception:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or ill-formed range {text!r}")
    n = int((hi - lo) / step)
    return [float(lo + k * step) for k in range(n + 1)]


def parse_ints(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _common(p: argparse.ArgumentParser, grid_default: int, tmax_default: float) -> None:
    p.add_argument("--ell", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=grid_default)
    p.add_argument("--tmax", type=float, default=tmax_default)
    p.add_argument("--ic", choices=("sine", "bump", "zero"), default="sine")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json", dest="json_path", help="JSON summary path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="switchwave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate-pointwise", help="delayed point damping at l/2")
    _common(p, 64, 100.0)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--xi", type=float, help="damping point; must equal ell/2")

    p = sub.add_parser("simulate-boundary", help="switched boundary feedback")
    _common(p, 64, 100.0)
    p.add_argument("--mu1", type=float, required=True)
    p.add_argument("--mu2", type=float, required=True)

    p = sub.add_parser("simulate-internal", help="switched internal damping (finite differences)")
    _common(p, 256, 60.0)
    p.add_argument("--b1", type=float, required=True)
    p.add_argument("--b2", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--tstar", type=float, required=True)

    p = sub.add_parser("stability-region", help="stability verdicts on a parameter grid")
    p.add_argument("--system", choices=("pointwise", "boundary"), required=True)
    p.add_argument("--a-range", type=parse_range)
    p.add_argument("--mu1-range", type=parse_range)
    p.add_argument("--mu2-range", type=parse_range)
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--out")
    p.add_argument("--json", dest="json_path")

    p = sub.add_parser("predict-rate", help="spectral radius and predicted energy slope")
    p.add_argument("--system", choices=("pointwise", "boundary"), required=True)
    p.add_argument("--ell", type=float, default=1.0)
    p.add_argument("--a", type=float)
    p.add_argument("--mu1", type=float)
    p.add_argument("--mu2", type=float)
    p.add_argument("--json", dest="json_path")

    p = sub.add_parser("cross-validate", help="characteristic solver vs finite differences")
    p.add_argument("--system", choices=("pointwise", "boundary"), required=True)
    p.add_argument("--ell", type=float, default=1.0)
    p.add_argument("--a", type=float)
    p.add_argument("--mu1", type=float)
    p.add_argument("--mu2", type=float)
    p.add_argument("--grids", type=parse_ints, default=[64, 128, 256])
    p.add_argument("--tmax", type=float)
    p.add_argument("--ic", choices=("sine", "bump", "zero"), default="sine")
    p.add_argument("--out")
    p.add_argument("--json", dest="json_path")
    return parser


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError("missing required flag(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def cmd_simulate_pointwise(args) -> None:
    if args.xi is not None and abs(args.xi - args.ell / 2) > 1e-12 * args.ell:
        raise ValueError(f"--xi must equal ell/2 = {args.ell / 2}")
    series = analysis.simulate_pointwise(args.a, args.ell, args.grid, args.tmax, args.ic)
    summary = analysis.summarize(series, spectral.pointwise_report(args.a, args.ell), args.ell)
    if args.out:
        analysis.write_series_csv(series, args.out)
    _emit(analysis.to_json(summary), args.json_path)


def cmd_simulate_boundary(args) -> None:
    series = analysis.simulate_boundary(args.mu1, args.mu2, args.ell, args.grid, args.tmax, args.ic)
    summary = analysis.summarize(series, spectral.boundary_report(args.mu1, args.mu2, args.ell),
                                 4 * args.ell)
    if args.out:
        analysis.write_series_csv(series, args.out)
    _emit(analysis.to_json(summary), args.json_path)


def cmd_simulate_internal(args) -> None:
    params = {"b1": args.b1, "b2": args.b2, "tau": args.tau, "tstar": args.tstar}
    cfg = make_fd_config("internal", params, args.ell, args.grid, args.tmax)
    run = run_fd(cfg, args.ic)
    meta = {"system": "internal", **params, "ell": args.ell, "nx": args.grid, "ic": args.ic}
    series = analysis.EnergySeries(run.times, run.energies, meta)
    if args.out:
        analysis.write_series_csv(series, args.out)

    alpha = measure_contraction(cfg, args.ic)
    period = args.tstar + args.tau
    alpha_tilde = alpha * (1 + abs(args.b2) * args.tau) ** 2
    check = delayed_window_bound_check(run.times, run.energies, alpha, args.b2, args.tau, args.tstar)
    try:
        fitted = analysis.fit_decay_rate(series, period).slope
    except analysis.DegenerateSeries:
        fitted = -math.inf
    summary = {
        "system": "internal",
        "params": {k: v for k, v in meta.items() if k != "system"},
        "spectral_radius": None,
        "alpha": alpha,
        "alpha_tilde": alpha_tilde,
        "b2_threshold": b2_threshold(alpha, args.tau),
        "delayed_window_max_ratio": check.max_ratio,
        "predicted_slope": math.log(alpha_tilde) / period if alpha_tilde > 0 else None,
        "fitted_slope": fitted,
        "r_squared": None,
        "stable_predicted": bool(alpha_tilde < 1),
        "stable_observed": bool(fitted < 0),
    }
    _emit(analysis.to_json(summary), args.json_path)


def cmd_stability_region(args) -> None:
    rows = []
    if args.system == "pointwise":
        _need(args, "a_range")
        for a in args.a_range:
            excluded = min(abs(a), abs(a - 2)) < args.eps
            stable = spectral.pointwise_stable(a)
            rows.append({"a": a, "stable": stable,
                         "spectral_radius": spectral.pointwise_spectral_radius(a),
                         "in_interval": 0 < a < 2, "excluded": excluded,
                         "agree": None if excluded else stable == (0 < a < 2)})
        check = spectral.region_equivalence_check("pointwise", args.a_range, args.eps)
    else:
        _need(args, "mu1_range", "mu2_range")
        pts = [(m1, m2) for m1 in args.mu1_range for m2 in args.mu2_range]
        for m1, m2 in pts:
            excluded = min(abs(m1 - 1), abs(m2 - 1), abs(m2 - m1)) < args.eps
            row = {"mu1": m1, "mu2": m2, "excluded": excluded}
            if m1 == 1:
                row.update(stable=None, lambda2=None, ordering=None, agree=None)
            else:
                stable = spectral.boundary_stable(m1, m2)
                order = spectral.ordering_predicate(m1, m2)
                row.update(stable=stable, lambda2=spectral.boundary_matrix(m1, m2)[1],
                           ordering=order, agree=None if excluded else stable == order)
            rows.append(row)
        check = spectral.region_equivalence_check("boundary", pts, args.eps)
    _emit(analysis.table_to_csv(rows), args.out)
    if args.out or args.json_path:
        summary = {"system": args.system, "checked": check.checked, "skipped": check.skipped,
                   "disagreements": len(check.disagreements), "agree": check.agree}
        _emit(analysis.to_json(summary), args.json_path)


def cmd_predict_rate(args) -> None:
    if args.system == "pointwise":
        _need(args, "a")
        rep = spectral.pointwise_report(args.a, args.ell)
    else:
        _need(args, "mu1", "mu2")
        rep = spectral.boundary_report(args.mu1, args.mu2, args.ell)
    out = {
        "system": rep.system_tag,
        "params": rep.params,
        "eigenvalues": [[float(z.real), float(z.imag)] for z in np.atleast_1d(rep.eigenvalues)],
        "spectral_radius": rep.spectral_radius,
        "stable_predicted": rep.stable,
        "predicted_slope": rep.predicted_energy_slope,
        "conditioning": rep.conditioning,
    }
    _emit(analysis.to_json(out), args.json_path)


def cmd_cross_validate(args) -> None:
    if args.system == "pointwise":
        _need(args, "a")
        params = {"a": args.a}
    else:
        _need(args, "mu1", "mu2")
        params = {"mu1": args.mu1, "mu2": args.mu2}
    cv = fd_cross_validate(args.system, params, args.grids, args.ell, args.tmax, args.ic)
    rows = [{"nx": n, "rel_diff": d} for n, d in zip(cv.resolutions, cv.rel_diffs)]
    if args.out:
        _emit(analysis.table_to_csv(rows, ["nx", "rel_diff"]), args.out)
    summary = {"system": args.system, "params": params, "resolutions": cv.resolutions,
               "rel_diffs": cv.rel_diffs, "monotone": cv.monotone}
    _emit(analysis.to_json(summary), args.json_path)


COMMANDS = {
    "simulate-pointwise": cmd_simulate_pointwise,
    "simulate-boundary": cmd_simulate_boundary,
    "simulate-internal": cmd_simulate_internal,
    "stability-region": cmd_stability_region,
    "predict-rate": cmd_predict_rate,
    "cross-validate": cmd_cross_validate,
}


RANGE_FLAGS = ("--a-range", "--mu1-range", "--mu2-range")


def _glue_ranges(argv: list[str]) -> list[str]:
    # argparse reads "-4:4:0.1" as an option; bind it to its flag explicitly
    out, i = [], 0
    while i < len(argv):
        if argv[i] in RANGE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_ranges(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except (ValueError, ZeroDivisionError, ArithmeticError, OSError) as exc:
        print(f"switchwave {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


main = run_command


if __name__ == "__main__":
    sys.exit(main())
