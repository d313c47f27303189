"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 config/domain error,
3 integration failure.
"""

import argparse
import csv
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .closure import recurrence
from .config import RunConfig, load_config
from .dynamics import SW, Harmonic, ModelParams, TTW_F, TTW_G, potential
from .errors import ConfigError, IntegrationError, PoleError
from .integrate import COMPLETED, integrate
from .invariants import report
from .kgeom import r_max
from .svg import Series, gnuplot_script, line_chart
from .verify import run_checks

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_INTEGRATION = 0, 1, 2, 3

STATE_COLUMNS = ["t", "r", "phi", "p_r", "p_phi"]


def _err(msg):
    print(f"error: {msg}", file=sys.stderr)


def _stamp():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _resolve(path, out_dir, default=None):
    if path is None:
        if out_dir is None or default is None:
            return None
        path = default
    path = Path(path)
    if out_dir is not None and not path.is_absolute():
        path = Path(out_dir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _fmt(v):
    return f"{v:.17g}"


def conserved_keys(model: ModelParams):
    v = model.variant
    if isinstance(v, Harmonic):
        return ["H", "J", "I1", "I2", "I4", "E"]
    if isinstance(v, SW):
        return ["H", "I1", "I2", "I3"]
    if isinstance(v, (TTW_F, TTW_G)):
        return ["H", "J1", "J2", "ReK", "ImK"]
    return ["H", "J1", "J2"]


def drift(table: dict, keys) -> dict:
    """Max relative deviation from the initial value along the samples.

    Real and imaginary parts of a complex constant are measured against the
    initial modulus of that constant.
    """
    out = {}
    for key in keys:
        if key not in table:
            continue
        col = np.asarray(table[key], dtype=float)
        if key[:2] in ("Re", "Im") and ("Re" + key[2:]) in table:
            base = math.hypot(table["Re" + key[2:]][0], table["Im" + key[2:]][0])
        else:
            base = abs(col[0])
        out[key] = float(np.max(np.abs(col - col[0])) / max(base, np.finfo(float).tiny))
    return out


def trajectory_table(model, traj) -> dict:
    table = {c: traj.t if c == "t" else traj.y[:, i - 1] for i, c in enumerate(STATE_COLUMNS)}
    rep = report(model, traj.states).to_flat()
    table.update({k: np.broadcast_to(v, traj.t.shape) for k, v in rep.items()})
    return table


def write_csv(path, table: dict, timestamp=True):
    cols = list(table)
    n = len(table["t"])
    with open(path, "w", newline="") as fh:
        if timestamp:
            fh.write(f"# generated {_stamp()}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for i in range(n):
            w.writerow([_fmt(float(table[c][i])) for c in cols])


def write_json(path, payload: dict, timestamp=True):
    if timestamp:
        payload = {"generated": _stamp(), **payload}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


# --- commands ---

def cmd_simulate(config: RunConfig, out_dir=None, timestamp=True) -> int:
    try:
        config.validate_initial()
        traj = integrate(config.model, config.initial, config.integrator)
    except (ConfigError, PoleError, ValueError) as exc:
        _err(exc)
        return EXIT_CONFIG
    except IntegrationError as exc:
        _err(exc)
        return EXIT_INTEGRATION
    table = trajectory_table(config.model, traj)
    drifts = drift(table, conserved_keys(config.model))
    csv_path = _resolve(config.outputs.get("csv_path"), out_dir, "trajectory.csv")
    json_path = _resolve(config.outputs.get("json_path"), out_dir, "trajectory.json")
    if csv_path:
        write_csv(csv_path, table, timestamp)
    if json_path:
        cols = list(table)
        samples = [{c: float(table[c][i]) for c in cols} for i in range(len(traj))]
        write_json(json_path, {"config": config.to_dict(), "termination": traj.termination,
                               "message": traj.message, "drift": drifts, "columns": cols,
                               "samples": samples}, timestamp)
    print(f"samples: {len(traj)}  termination: {traj.termination}")
    for key, val in drifts.items():
        print(f"{key}: {val:.3e}")
    if traj.termination != COMPLETED:
        _err(traj.message)
        return EXIT_INTEGRATION
    return EXIT_OK


def _print_table(results):
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.name:<{width}}  {r.worst:10.3e}  tol {r.tol:.0e}  {'PASS' if r.passed else 'FAIL'}")


def cmd_verify(config: RunConfig, n_points=None, seed=None, corrupt_omega=0.0, out_dir=None,
               timestamp=True) -> int:
    n = config.points if n_points is None else n_points
    seed = config.seed if seed is None else seed
    try:
        results = run_checks(config.model, n, seed, config.box, corrupt_omega)
    except (ValueError, PoleError) as exc:
        _err(exc)
        return EXIT_CONFIG
    _print_table(results)
    ok = all(r.passed for r in results)
    print("ALL PASS" if ok else "FAILED")
    path = _resolve(None, out_dir, "verify.json")
    if path:
        write_json(path, {"config": config.to_dict(), "points": n, "seed": seed,
                          "results": [r.to_dict() for r in results]}, timestamp)
    return EXIT_OK if ok else EXIT_FAIL


def sweep_kappa(config: RunConfig, kappas, n_points=None, seed=None) -> dict:
    """Worst residual of every check for each curvature in ``kappas``."""
    if not kappas:
        raise ConfigError("kappas must be a non-empty list")
    n = config.points if n_points is None else n_points
    seed = config.seed if seed is None else seed
    names, rows, passed = None, [], []
    for k in kappas:
        results = run_checks(config.model.with_(kappa=float(k)), n, seed, config.box)
        names = names or [r.name for r in results]
        rows.append([r.worst for r in results])
        passed.append(all(r.passed for r in results))
    return {"kappas": [float(k) for k in kappas], "checks": names, "worst": rows, "passed": passed}


def cmd_sweep_kappa(config: RunConfig, kappas, n_points=None, seed=None, out_dir=None, timestamp=True) -> int:
    try:
        matrix = sweep_kappa(config, kappas, n_points, seed)
    except (ConfigError, ValueError, PoleError) as exc:
        _err(exc)
        return EXIT_CONFIG
    for k, row, ok in zip(matrix["kappas"], matrix["worst"], matrix["passed"]):
        print(f"kappa={k:+.4g}  worst={max(row):.3e}  {'PASS' if ok else 'FAIL'}")
    path = _resolve(None, out_dir, "sweep.json")
    if path:
        write_json(path, matrix, timestamp)
    else:
        print(json.dumps(matrix))
    return EXIT_OK if all(matrix["passed"]) else EXIT_FAIL


def cmd_closure(config: RunConfig, t_max=None, tol=None) -> int:
    t_max = config.t_max if t_max is None else t_max
    tol = config.tol if tol is None else tol
    try:
        config.validate_initial()
        rec = recurrence(config.model, config.initial, t_max, config.integrator, tol=tol)
    except ConfigError as exc:
        _err(exc)
        return EXIT_CONFIG
    except IntegrationError as exc:
        _err(exc)
        return EXIT_INTEGRATION
    ok = rec.distance <= tol
    print(f"recurrence distance {rec.distance:.3e} at t={rec.time:.12g}  (tol {tol:g})  {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def potential_curves(omega0, kappas, r_grid):
    """Radial oscillator potential ``U(r; kappa)`` for each curvature.

    Grid points beyond a sphere's wall ``r_max(kappa)`` get ``+inf`` (the
    potential diverges there).  The grid must be non-negative and every
    point must lie inside the domain of at least one curve.
    """
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(r_grid < 0):
        raise ConfigError("r grid must be non-negative")
    inside = [r_grid < r_max(k) * (1.0 - 1e-12) for k in kappas]
    if not np.all(np.any(inside, axis=0)):
        worst = max(r_max(k) for k in kappas)
        raise ConfigError(f"r grid reaches {r_grid.max():.6g}, beyond the radial domain [0, {worst:.6g})")
    curves = []
    for k, ok in zip(kappas, inside):
        u = np.full(r_grid.shape, np.inf)
        u[ok] = potential(ModelParams(k, omega0, Harmonic()), r_grid[ok], 0.0)
        curves.append(u)
    return curves


def cmd_plot_potential(omega0=1.0, kappas=(-2, -1, 0, 1, 2), r_grid=None, out_path=None, gnuplot=False) -> int:
    if r_grid is None:
        r_grid = np.linspace(0.0, 1.4, 141)
    try:
        curves = potential_curves(omega0, kappas, r_grid)
    except (ConfigError, PoleError) as exc:
        _err(exc)
        return EXIT_CONFIG
    series = [Series(f"kappa = {k:g}", np.asarray(r_grid), u, dashed=(k == 0)) for k, u in zip(kappas, curves)]
    title = f"U(r; kappa) = omega0^2 Tan_k^2(r) / 2, omega0 = {omega0:g}"
    flat = [u for k, u in zip(kappas, curves) if k == 0]
    y_max = 2.0 * float(np.max(flat[0])) if flat and np.max(flat[0]) > 0 else None
    text = (gnuplot_script(series, title, "r", "U") if gnuplot
            else line_chart(series, title, "r", "U", y_max=y_max))
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).parent.mkdir(parents=True, exist_ok=True)
        Path(out_path).write_text(text)
        print(f"wrote {out_path}")
    return EXIT_OK


# --- argument parsing ---

def _floats(text):
    text = text.strip()
    if not text:
        return []
    return [float(v) for v in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--seed", type=int, help="RNG seed for random phase points")
    common.add_argument("--no-timestamp", action="store_true", help="omit generation timestamps")

    cfg = argparse.ArgumentParser(add_help=False)
    cfg.add_argument("--config", metavar="PATH", required=True, help="JSON run configuration")

    parser = argparse.ArgumentParser(prog="curvedttw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("simulate", parents=[common, cfg], help="integrate and record invariants")

    p = sub.add_parser("verify", parents=[common, cfg], help="Poisson-bracket and identity checks")
    p.add_argument("--points", type=int, help="number of random phase points")
    p.add_argument("--corrupt-omega", type=float, default=0.0, help=argparse.SUPPRESS)

    p = sub.add_parser("sweep-kappa", parents=[common, cfg], help="verify over a list of curvatures")
    p.add_argument("--kappas", type=_floats, required=True, help="comma-separated curvatures")
    p.add_argument("--points", type=int)

    p = sub.add_parser("closure", parents=[common, cfg], help="phase-space recurrence of an orbit")
    p.add_argument("--t-max", type=float)
    p.add_argument("--tol", type=float)

    p = sub.add_parser("plot-potential", parents=[common], help="plot U(r; kappa) curves")
    p.add_argument("--omega0", type=float, default=1.0)
    p.add_argument("--kappas", type=_floats, default=[-2.0, -1.0, 0.0, 1.0, 2.0])
    p.add_argument("--r-max", type=float, default=1.4)
    p.add_argument("--n", type=int, default=141, help="grid points")
    p.add_argument("--gnuplot", action="store_true", help="emit a gnuplot script instead of SVG")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    ts = not args.no_timestamp
    if args.command == "plot-potential":
        if not args.kappas:
            _err("--kappas must not be empty")
            return EXIT_CONFIG
        out = None
        if args.out:
            out = Path(args.out) / ("potential.gp" if args.gnuplot else "potential.svg")
        return cmd_plot_potential(args.omega0, args.kappas, np.linspace(0.0, args.r_max, args.n), out, args.gnuplot)
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        _err(exc)
        return EXIT_CONFIG
    if args.command == "simulate":
        return cmd_simulate(config, args.out, ts)
    if args.command == "verify":
        return cmd_verify(config, args.points, args.seed, args.corrupt_omega, args.out, ts)
    if args.command == "sweep-kappa":
        if not args.kappas:
            _err("--kappas must not be empty")
            return EXIT_CONFIG
        return cmd_sweep_kappa(config, args.kappas, args.points, args.seed, args.out, ts)
    return cmd_closure(config, args.t_max, args.tol)


if __name__ == "__main__":
    sys.exit(main())
