"""Benchmark harness and command line interface.

Reproduces the reference result tables as CSV and the convergence-history
figures as machine-readable series files. Three subcommands:

    bench run   --preset table1 --out results.csv
    bench solve --family ex241 --m 8 --tau h --method gadi --alpha auto \
                --omega 0.01 --tol 1e-5 --inner exact --series series.csv
    bench sweep --family ex31 --n 16 --t 0.01 --alpha-grid 0.5:5:0.1 \
                --omega-grid 0,0.01,0.1,0.5,1,1.5

An INI config file can supply any flag (section per subcommand, keys named
like the long flags); explicit flags override the file. The process exits 0
only when every requested run converged.
"""
import argparse
import configparser
import csv
import io
import math
import os
import re
import sys
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .linalg import InnerSolverError
from .matrixeq import (lift_lyapunov, newton_gadi_riccati, solve_lyapunov_gadi,
                       solve_lyapunov_hss)
from .problems import ProblemSpec
from .spectral import eig_extremes_spd, optimal_alpha
from .splitting import (SolveConfig, SolveReport, SplitParams, default_alpha,
                        run_stationary)

__all__ = [
    "BenchmarkRow", "ParamPolicy", "RunConfig", "SweepCell",
    "run_grid", "sweep_params", "best_cell",
    "write_csv", "parse_csv", "write_convergence_series",
    "build_preset", "PRESET_NAMES", "main",
]

CSV_HEADER = ("algorithm", "n", "problem", "alpha", "omega", "RES", "IT", "CPU", "converged")

LINEAR_METHODS = ("gadi", "hss", "mhss", "pmhss", "pmhss-vi", "cri", "tscsp")
METHODS_BY_FAMILY = {
    "ex241": LINEAR_METHODS,
    "ex242": LINEAR_METHODS,
    "ex31": ("gadi", "hss"),
    "ex421": ("newton-gadi",),
}


@dataclass
class BenchmarkRow:
    algorithm: str
    n: int
    problem: str
    alpha: float
    omega: float
    res: float
    it: int
    cpu: float
    converged: bool


@dataclass
class SweepCell:
    alpha: float
    omega: float
    it: int
    res: float
    converged: bool


@dataclass
class ParamPolicy:
    """How (alpha, omega) are chosen per (problem, method) cell.

    kind "auto": one point with the method default shift; "fixed": the given
    (alpha, omega) points, where alpha None means the auto default; "sweep":
    full factorial over the grids, reporting the single best cell (fewest
    iterations, residual tiebreak, then smaller alpha).
    """
    kind: str = "auto"
    points: tuple = ((None, None),)
    alpha_grid: tuple = None
    omega_grid: tuple = None

    def __post_init__(self):
        if self.kind not in ("auto", "fixed", "sweep"):
            raise ValueError(f"policy kind must be auto, fixed or sweep, got {self.kind!r}")


@dataclass
class RunConfig:
    """One batch of (problem x method x parameter point) benchmark cells."""
    problems: tuple
    methods: tuple
    policy: ParamPolicy = field(default_factory=ParamPolicy)
    tol: float = 1e-5
    inner: str = "exact"
    max_outer: int = 500
    newton_options: dict = field(default_factory=dict)
    series: bool = False
    seed: int = 0
    name: str = ""

    def __post_init__(self):
        if not self.problems or not self.methods:
            raise ValueError("problem and method lists must be nonempty")
        for spec in self.problems:
            allowed = METHODS_BY_FAMILY[spec.family]
            for method in self.methods:
                if method not in allowed:
                    raise ValueError(
                        f"method {method!r} is not valid for family {spec.family!r} "
                        f"(allowed: {allowed})")


DEFAULT_OMEGA = 0.01  # GADI relaxation used when none is requested
SWEEP_OMEGAS = (0.0, 0.01, 0.1)
SWEEP_MAX_OUTER = 200


def _auto_alpha(spec, problem, method):
    if spec.family in ("ex241", "ex242"):
        # pmhss with V = I coincides with mhss, so it inherits that default shift
        base = "mhss" if method == "pmhss-vi" else method
        return default_alpha(problem, base)
    if spec.family == "ex31":
        return optimal_alpha(eig_extremes_spd(lift_lyapunov(problem).w_lift))
    # ex421: shift of the lifted real part, which the Newton driver also uses
    from .matrixeq import _lift_candidates
    w_lift, _ = _lift_candidates(problem.W, problem.T)
    return optimal_alpha(eig_extremes_spd(w_lift))


def _auto_grid(alpha_star, points=21):
    return tuple(np.geomspace(alpha_star / 5.0, 5.0 * alpha_star, points))


def _solve_cell(spec, problem, method, alpha, omega, cfg, max_outer=None):
    """Run one benchmark cell; returns (row, report)."""
    max_outer = max_outer if max_outer is not None else cfg.max_outer
    t0 = time.perf_counter()
    if spec.family in ("ex241", "ex242"):
        base = "pmhss" if method == "pmhss-vi" else method
        V = sp.eye_array(problem.n, format="csr") if method == "pmhss-vi" else None
        params = SplitParams(base, alpha, omega, V=V)
        config = SolveConfig(tol=cfg.tol, max_outer=max_outer, inner=cfg.inner)
        _, report = run_stationary(problem, params, config)
    elif spec.family == "ex31":
        params = SplitParams(method, alpha, omega)
        config = SolveConfig(tol=cfg.tol, max_outer=max_outer, inner=cfg.inner)
        solver = solve_lyapunov_gadi if method == "gadi" else solve_lyapunov_hss
        _, report = solver(problem, params, config)
    else:  # ex421
        opts = dict(cfg.newton_options)
        opts.setdefault("inner_forcing", (0.1, 0.1))
        result = newton_gadi_riccati(problem, outer_tol=cfg.tol, alpha=alpha,
                                     omega=omega, **opts)
        # the report's history is indexed by outer step; the table IT column
        # carries the cumulative inner sweep count
        report = SolveReport(result.converged, result.outer_iterations,
                             result.final_res, result.res_history,
                             result.wall_time, result.inner_iteration_total)
        cpu = time.perf_counter() - t0
        row = BenchmarkRow(method, spec.dimension, spec.label(), float(alpha),
                           float(omega), result.final_res,
                           result.inner_iteration_total, cpu, result.converged)
        return row, report
    cpu = time.perf_counter() - t0
    row = BenchmarkRow(method, spec.dimension, spec.label(), float(alpha),
                       float(omega), report.final_res, report.iterations, cpu,
                       report.converged)
    return row, report


def _failed_row(spec, method, alpha, omega, cpu, err):
    it = getattr(err, "iterations", 0)
    res = getattr(err, "residual", math.nan)
    if not np.isfinite(res):
        res = math.nan
    return BenchmarkRow(method, spec.dimension, spec.label(), float(alpha),
                        float(omega), res, int(it), cpu, False)


def run_grid(cfg, on_report=None):
    """Run every (problem, method, parameter point) cell of a RunConfig.

    Rows come back in configuration order; a solver failure is recorded as a
    non-converged row rather than dropped. `on_report` receives
    (row, report) for each completed solve (used for series output).
    """
    rows = []
    for spec in cfg.problems:
        problem = spec.build()
        for method in cfg.methods:
            for alpha, omega in _resolve_points(cfg, spec, problem, method):
                t0 = time.perf_counter()
                try:
                    row, report = _solve_cell(spec, problem, method, alpha, omega, cfg)
                except (InnerSolverError, RuntimeError) as err:
                    rows.append(_failed_row(spec, method, alpha, omega,
                                            time.perf_counter() - t0, err))
                    continue
                rows.append(row)
                if on_report is not None:
                    on_report(row, report)
    return rows


def _resolve_points(cfg, spec, problem, method):
    policy = cfg.policy
    if policy.kind == "auto":
        omega = DEFAULT_OMEGA if method in ("gadi", "newton-gadi") else 0.0
        return [(_auto_alpha(spec, problem, method), omega)]
    if policy.kind == "fixed":
        out = []
        auto = None
        for alpha, omega in policy.points:
            if alpha is None:
                auto = _auto_alpha(spec, problem, method) if auto is None else auto
                alpha = auto
            out.append((float(alpha), float(omega if omega is not None else DEFAULT_OMEGA)))
        return out
    # sweep: factorial over the grids, keep the single best cell
    alpha_star = _auto_alpha(spec, problem, method)
    alphas = policy.alpha_grid if policy.alpha_grid is not None else _auto_grid(alpha_star)
    if policy.omega_grid is not None:
        omegas = policy.omega_grid
    else:
        omegas = SWEEP_OMEGAS if method in ("gadi", "newton-gadi") else (0.0,)
    best = None
    for omega in omegas:
        for alpha in alphas:
            try:
                row, _ = _solve_cell(spec, problem, method, float(alpha), float(omega),
                                     cfg, max_outer=min(cfg.max_outer, SWEEP_MAX_OUTER))
            except (InnerSolverError, RuntimeError):
                continue
            key = (0 if row.converged else 1, row.it, row.res, row.alpha)
            if best is None or key < best[0]:
                best = (key, row.alpha, row.omega)
    if best is None:
        # nothing converged; fall back to the nominal shift so the failure is recorded
        return [(alpha_star, omegas[0])]
    return [(best[1], best[2])]


def sweep_params(spec, method, alpha_grid, omega_grid, tol=1e-5, inner="exact",
                 max_outer=SWEEP_MAX_OUTER):
    """Full factorial (alpha, omega) sweep for one problem and method.

    Returns the list of SweepCell results in grid order; pick the winner with
    :func:`best_cell`.
    """
    if len(alpha_grid) == 0 or len(omega_grid) == 0:
        raise ValueError("sweep grids must be nonempty")
    problem = spec.build()
    if method not in METHODS_BY_FAMILY[spec.family]:
        raise ValueError(f"method {method!r} is not valid for family {spec.family!r}")
    cfg = RunConfig(problems=(spec,), methods=(method,), tol=tol, inner=inner,
                    max_outer=max_outer)
    cells = []
    for omega in omega_grid:
        for alpha in alpha_grid:
            try:
                row, _ = _solve_cell(spec, problem, method, float(alpha), float(omega), cfg)
            except (InnerSolverError, RuntimeError) as err:
                failed = _failed_row(spec, method, alpha, omega, 0.0, err)
                cells.append(SweepCell(float(alpha), float(omega), failed.it,
                                       failed.res, False))
                continue
            cells.append(SweepCell(row.alpha, row.omega, row.it, row.res, row.converged))
    return cells


def best_cell(cells):
    """Winning sweep cell: fewest iterations, then smaller residual, then smaller alpha."""
    def key(c):
        res = c.res if np.isfinite(c.res) else math.inf
        return (0 if c.converged else 1, c.it, res, c.alpha)
    return min(cells, key=key)


# -- output -------------------------------------------------------------------

def _format_param(x):
    return "auto" if x is None else f"{x:.10g}"


def write_csv(rows, path):
    """Write benchmark rows; RES uses scientific notation with 5 significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([
                r.algorithm, r.n, r.problem,
                _format_param(r.alpha), _format_param(r.omega),
                f"{r.res:.4e}", r.it, f"{r.cpu:.6f}",
                "true" if r.converged else "false",
            ])


def parse_csv(path):
    """Read a benchmark CSV back into rows (inverse of :func:`write_csv`)."""
    def param(tok):
        return None if tok == "auto" else float(tok)
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        for rec in reader:
            rows.append(BenchmarkRow(
                rec[0], int(rec[1]), rec[2], param(rec[3]), param(rec[4]),
                float(rec[5]), int(rec[6]), float(rec[7]), rec[8] == "true"))
    return rows


def write_convergence_series(report, path):
    """Write the residual history as an 'iteration,RES' series for plotting."""
    if not report.residual_history:
        raise ValueError("report has an empty residual history")
    with open(path, "w", newline="") as fh:
        fh.write("iteration,RES\n")
        for it, res in report.residual_history:
            fh.write(f"{it},{res:.10e}\n")


def _series_filename(prefix, row):
    tag = re.sub(r"[^A-Za-z0-9]+", "_", f"{row.algorithm}_{row.problem}").strip("_")
    return f"{prefix}{tag}.csv"


# -- presets ------------------------------------------------------------------

PRESET_NAMES = ("table1", "table2", "table3", "table4", "table5",
                "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

_T1_SIZES = (8, 16, 24, 32, 48)


def build_preset(name, tol=1e-5, inner="exact"):
    """Pinned problem/method/parameter grids reproducing the reference tables.

    The ex241/ex242 presets use the unit Laplacian stencil, which is the
    reading of those families that matches the reference iteration counts
    (see README). Returns a list of RunConfig batches executed in order.
    """
    def spec241(m, tau="h"):
        return ProblemSpec("ex241", m=m, tau_mode=tau, stencil="unit")

    def spec242(m):
        return ProblemSpec("ex242", m=m, stencil="unit")

    comparison = ("mhss", "pmhss", "pmhss-vi", "cri", "tscsp")
    if name == "table1":
        return [
            RunConfig(tuple(spec241(m) for m in _T1_SIZES), comparison,
                      ParamPolicy("auto"), tol=tol, inner=inner, name=name),
            RunConfig(tuple(spec241(m) for m in _T1_SIZES), ("gadi",),
                      ParamPolicy("sweep"), tol=tol, inner=inner, name=name),
            RunConfig(tuple(spec241(m, "500h") for m in _T1_SIZES), ("gadi",),
                      ParamPolicy("sweep"), tol=tol, inner=inner, name=name),
        ]
    if name == "table2":
        return [
            RunConfig(tuple(spec242(m) for m in _T1_SIZES), comparison,
                      ParamPolicy("auto"), tol=tol, inner=inner, name=name),
            RunConfig(tuple(spec242(m) for m in _T1_SIZES), ("gadi",),
                      ParamPolicy("sweep"), tol=tol, inner=inner, name=name),
        ]
    if name == "table3":
        points = tuple((None, w) for w in (0.01, 0.1, 0.0, 0.5, 1.0, 1.5))
        return [RunConfig(tuple(ProblemSpec("ex31", n=16, t=t) for t in (0.01, 0.1)),
                          ("gadi",), ParamPolicy("fixed", points=points),
                          tol=tol, inner=inner, name=name)]
    if name == "table4":
        specs = tuple(ProblemSpec("ex31", n=n, t=t)
                      for n in (8, 16, 24, 32, 48) for t in (0.01, 0.1))
        return [RunConfig(specs, ("hss", "gadi"),
                          ParamPolicy("fixed", points=((None, 0.0),)),
                          tol=tol, inner=inner, name=name)]
    if name == "table5":
        specs = tuple(ProblemSpec("ex421", n=n) for n in (8, 16, 24, 32))
        return [RunConfig(specs, ("newton-gadi",),
                          ParamPolicy("fixed", points=((None, 0.01),)),
                          tol=tol, inner=inner, name=name,
                          newton_options={"inner_forcing": (0.1, 0.1)})]
    if name == "fig1":
        return [RunConfig((spec241(32),), ("mhss", "pmhss", "cri", "tscsp", "gadi"),
                          ParamPolicy("auto"), tol=tol, inner=inner, series=True, name=name)]
    if name == "fig2":
        return [RunConfig((spec242(32),), ("mhss", "pmhss", "cri", "tscsp", "gadi"),
                          ParamPolicy("auto"), tol=tol, inner=inner, series=True, name=name)]
    if name in ("fig3", "fig5"):
        return [RunConfig((ProblemSpec("ex31", n=32, t=0.01),), ("hss", "gadi"),
                          ParamPolicy("fixed", points=((None, 0.0),)),
                          tol=tol, inner=inner, series=True, name=name)]
    if name in ("fig4", "fig6"):
        return [RunConfig((ProblemSpec("ex31", n=32, t=0.1),), ("hss", "gadi"),
                          ParamPolicy("fixed", points=((None, 0.0),)),
                          tol=tol, inner=inner, series=True, name=name)]
    if name == "fig7":
        return [RunConfig(tuple(ProblemSpec("ex421", n=n) for n in (8, 16, 24)),
                          ("newton-gadi",), ParamPolicy("fixed", points=((None, 0.01),)),
                          tol=tol, inner=inner, series=True, name=name,
                          newton_options={"inner_forcing": (0.1, 0.1)})]
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


# -- command line -------------------------------------------------------------

def _parse_grid(text):
    if text is None or text == "auto":
        return None
    if ":" in text:
        start, stop, step = (float(t) for t in text.split(":"))
        return tuple(np.arange(start, stop + step / 2.0, step))
    return tuple(float(t) for t in text.split(","))


def _parse_alpha(text):
    return None if text == "auto" else float(text)


_CONVERTERS = {
    "m": int, "n": int, "max_outer": int,
    "tol": float, "omega": float, "t": float, "sigma1": float, "sigma2": float,
    "alpha": _parse_alpha, "alpha_grid": _parse_grid, "omega_grid": _parse_grid,
}


def _apply_config_file(parser, path, section):
    ini = configparser.ConfigParser()
    with open(path) as fh:
        ini.read_file(fh)
    if not ini.has_section(section):
        return
    overrides = {}
    for key, value in ini.items(section):
        key = key.replace("-", "_")
        conv = _CONVERTERS.get(key, str)
        overrides[key] = conv(value)
    parser.set_defaults(**overrides)


def _add_problem_flags(p):
    # required flags may come from the config file, so enforcement is post-parse
    p.add_argument("--family", choices=("ex241", "ex242", "ex31", "ex421"))
    p.add_argument("--m", type=int, help="grid size for ex241/ex242 (n = m^2)")
    p.add_argument("--n", type=int, help="matrix size for ex31/ex421")
    p.add_argument("--tau", default="h", choices=("h", "500h"), help="ex241 time step")
    p.add_argument("--sigma1", type=float, default=100.0)
    p.add_argument("--sigma2", type=float, default=100.0)
    p.add_argument("--t", type=float, default=0.01, help="ex31 control parameter")
    p.add_argument("--stencil", default="h2", choices=("h2", "unit"),
                   help="Laplacian scaling for ex241/ex242")


def _spec_from_args(args):
    return ProblemSpec(args.family, m=args.m, n=args.n, tau_mode=args.tau,
                       sigma1=args.sigma1, sigma2=args.sigma2, t=args.t,
                       stencil=args.stencil)


def _build_parser():
    parser = argparse.ArgumentParser(prog="bench",
                                     description="splitting-iteration benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a pinned reproduction preset")
    run_p.add_argument("--preset", choices=PRESET_NAMES)
    run_p.add_argument("--out", default="results.csv")
    run_p.add_argument("--series-dir", default=None,
                       help="directory for per-run iteration,RES series files")
    run_p.add_argument("--tol", type=float, default=1e-5)
    run_p.add_argument("--inner", default="exact", choices=("exact", "iterative", "auto"))
    run_p.add_argument("--config", default=None)

    solve_p = sub.add_parser("solve", help="solve one instance with one method")
    _add_problem_flags(solve_p)
    solve_p.add_argument("--method",
                         choices=sorted({m for ms in METHODS_BY_FAMILY.values() for m in ms}))
    solve_p.add_argument("--alpha", default="auto",
                         help="shift parameter, or 'auto' for the method default")
    solve_p.add_argument("--omega", type=float, default=DEFAULT_OMEGA)
    solve_p.add_argument("--tol", type=float, default=1e-5)
    solve_p.add_argument("--inner", default="exact", choices=("exact", "iterative", "auto"))
    solve_p.add_argument("--max-outer", type=int, default=500, dest="max_outer")
    solve_p.add_argument("--series", default=None, help="write iteration,RES series here")
    solve_p.add_argument("--out", default=None, help="write the result row as CSV here")
    solve_p.add_argument("--config", default=None)

    sweep_p = sub.add_parser("sweep", help="factorial (alpha, omega) sweep")
    _add_problem_flags(sweep_p)
    sweep_p.add_argument("--method", default="gadi",
                         choices=sorted({m for ms in METHODS_BY_FAMILY.values() for m in ms}))
    sweep_p.add_argument("--alpha-grid", default="auto", dest="alpha_grid",
                         help="'start:stop:step', comma list, or 'auto'")
    sweep_p.add_argument("--omega-grid", default="0.01", dest="omega_grid",
                         help="comma-separated relaxation values")
    sweep_p.add_argument("--tol", type=float, default=1e-5)
    sweep_p.add_argument("--inner", default="exact", choices=("exact", "iterative", "auto"))
    sweep_p.add_argument("--out", default=None, help="write all sweep cells as CSV here")
    sweep_p.add_argument("--config", default=None)
    return parser, {"run": run_p, "solve": solve_p, "sweep": sweep_p}


def _cmd_run(args):
    cfgs = build_preset(args.preset, tol=args.tol, inner=args.inner)
    series_dir = args.series_dir
    if series_dir is None and any(c.series for c in cfgs):
        series_dir = os.path.dirname(os.path.abspath(args.out))
    rows = []
    for cfg in cfgs:
        sink = None
        if cfg.series and series_dir is not None:
            prefix = os.path.join(series_dir, f"{args.preset}_")
            sink = lambda row, report, prefix=prefix: write_convergence_series(
                report, _series_filename(prefix, row))
        rows.extend(run_grid(cfg, on_report=sink))
    write_csv(rows, args.out)
    print(f"{len(rows)} rows -> {args.out}")
    return 0 if all(r.converged for r in rows) else 1


def _cmd_solve(args):
    spec = _spec_from_args(args)
    problem = spec.build()
    if args.method not in METHODS_BY_FAMILY[spec.family]:
        raise SystemExit(f"method {args.method!r} is not valid for family {spec.family!r}")
    cfg = RunConfig((spec,), (args.method,), tol=args.tol, inner=args.inner,
                    max_outer=args.max_outer)
    alpha = _parse_alpha(args.alpha) if isinstance(args.alpha, str) else args.alpha
    if alpha is None:
        alpha = _auto_alpha(spec, problem, args.method)
    row, report = _solve_cell(spec, problem, args.method, alpha, args.omega, cfg)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerow([row.algorithm, row.n, row.problem, f"{row.alpha:.10g}",
                     f"{row.omega:.10g}", f"{row.res:.4e}", row.it,
                     f"{row.cpu:.6f}", "true" if row.converged else "false"])
    print(buf.getvalue(), end="")
    if args.out:
        write_csv([row], args.out)
    if args.series:
        write_convergence_series(report, args.series)
    return 0 if row.converged else 1


def _cmd_sweep(args):
    spec = _spec_from_args(args)
    alpha_grid = args.alpha_grid if not isinstance(args.alpha_grid, str) else _parse_grid(args.alpha_grid)
    omega_grid = args.omega_grid if not isinstance(args.omega_grid, str) else _parse_grid(args.omega_grid)
    if alpha_grid is None:
        problem = spec.build()
        alpha_grid = _auto_grid(_auto_alpha(spec, problem, args.method))
    if omega_grid is None:
        omega_grid = (DEFAULT_OMEGA,)
    cells = sweep_params(spec, args.method, alpha_grid, omega_grid,
                         tol=args.tol, inner=args.inner)
    best = best_cell(cells)
    print(f"best: alpha={best.alpha:.6g} omega={best.omega:.6g} "
          f"IT={best.it} RES={best.res:.4e} converged={best.converged}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("alpha", "omega", "IT", "RES", "converged"))
            for c in cells:
                writer.writerow([f"{c.alpha:.10g}", f"{c.omega:.10g}", c.it,
                                 f"{c.res:.4e}", "true" if c.converged else "false"])
    return 0 if best.converged else 1


def main(argv=None):
    parser, subparsers = _build_parser()
    args, _ = parser.parse_known_args(argv)
    if getattr(args, "config", None):
        # defaults must land on the subparser: it parses into a fresh namespace
        _apply_config_file(subparsers[args.command], args.config, args.command)
    args = parser.parse_args(argv)
    if args.command == "run":
        if args.preset is None:
            parser.error("run requires --preset (flag or config file)")
        return _cmd_run(args)
    if args.family is None:
        parser.error(f"{args.command} requires --family (flag or config file)")
    if args.command == "solve":
        if args.method is None:
            parser.error("solve requires --method (flag or config file)")
        return _cmd_solve(args)
    return _cmd_sweep(args)


if __name__ == "__main__":
    sys.exit(main())
