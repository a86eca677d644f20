"""Command-line front end.

Every subcommand writes CSV to ``--output`` (stdout by default).  Exit
codes: 0 success, 2 invalid input, 3 failed computation, 4 I/O error.
"""

import argparse
import os
import sys

import numpy as np

from . import karamata, plotting, sweep
from .discrepancy import ROLE_MODES, frechet_bounds, frechet_delta, frechet_roles
from .distributions import CATALOG_NAMES, catalog, parse_params
from .errors import (AssumptionError, DomainError, InversionError, ParameterError,
                     PreconditionError, QuadratureError, SteinFrechetError)
from .oracle import exact_distances, monte_carlo_distances
from .quadrature import QuadratureConfig
from .solver import verify_proposition1

EXIT_OK, EXIT_VALIDATION, EXIT_COMPUTATION, EXIT_IO = 0, 2, 3, 4


def _config(args):
    tol = args.tol
    return QuadratureConfig(abs_tol=tol, rel_tol=tol, max_subdivisions=args.max_subdiv)


def _law(args):
    return catalog(args.dist, **parse_params(args.param))


def _emit(args, rows, columns):
    text = sweep.write_csv(rows, columns)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sibling(path, ext):
    return os.path.splitext(path)[0] + ext


# ---------------------------------------------------------------------------
# subcommands

def cmd_discrepancy(args):
    F = _law(args)
    cfg = _config(args)
    res = frechet_delta(F, args.n, args.alpha, weighted=args.weighted, cfg=cfg,
                        roles=args.roles, unsafe_weighted=args.unsafe_weighted)
    row = {"dist": F.name, "n": args.n, "weighted": int(args.weighted), "value": res.value,
           "error_estimate": res.error_estimate, "P": res.roles["P"], "Q": res.roles["Q"],
           "kinks": ";".join(format(k, ".17g") for k in res.kinks),
           "guarantee": int(res.roles.get("guarantee", True))}
    _emit(args, [row], ("dist", "n", "weighted", "value", "error_estimate", "P", "Q", "kinks", "guarantee"))


BOUND_COLUMNS = ("dist", "n", "delta", "delta_err", "q_0", "kol_bound", "tv_bound", "delta_w",
                 "delta_w_err", "mu", "wass_bound", "kol_oracle", "tv_oracle", "wass_oracle", "note")


def cmd_bounds(args):
    F = _law(args)
    cfg = _config(args)
    b = frechet_bounds(F, args.n, args.alpha, cfg)
    row = {"dist": F.name, "n": args.n, "delta": b.delta, "delta_err": b.delta_err, "q_0": b.q_0,
           "kol_bound": b.kol_bound, "tv_bound": b.tv_bound, "delta_w": b.delta_w,
           "delta_w_err": b.delta_w_err if b.delta_w is not None else None, "mu": b.mu,
           "wass_bound": b.wass_bound, "note": b.wass_note}
    if args.oracle:
        P, Q = frechet_roles(F, args.n, args.alpha)
        rep = exact_distances(P, Q, cfg)
        row.update(kol_oracle=rep.kol, tv_oracle=rep.tv, wass_oracle=rep.wass)
    _emit(args, [row], BOUND_COLUMNS)


ORACLE_COLUMNS = ("method", "kol", "kol_err", "tv", "tv_err", "wass", "wass_err", "samples")


def cmd_oracle(args):
    F = _law(args)
    P, Q = frechet_roles(F, args.n, args.alpha)
    reps = [exact_distances(P, Q, _config(args))]
    if args.mc:
        reps.append(monte_carlo_distances(F, args.n, args.alpha, args.samples, args.seed))
    _emit(args, [vars(r) for r in reps], ORACLE_COLUMNS)


def _n_values(args):
    if args.n_log:
        lo, hi, count = args.n_log
        ns = np.unique(np.round(np.geomspace(float(lo), float(hi), int(count))).astype(int))
        return [int(n) for n in ns]
    if args.n is None:
        raise ParameterError("give --n values or --n-log START STOP COUNT")
    return args.n


def cmd_sweep(args):
    spec = sweep.SweepSpec(args.dist, _n_values(args), parse_params(args.param), args.alpha,
                           args.weighted, args.oracle, args.output, args.unsafe_weighted)
    rows, text = sweep.run_sweep(spec, _config(args), args.workers)
    if not args.output:
        sys.stdout.write(text)
    plot = args.svg or args.plot
    if plot:
        plotting.plot_sweep(rows, plot, title=spec.dist)


def cmd_rv_check(args):
    F = _law(args)
    t_grid = np.geomspace(1e2, args.t_max, 20)
    rep = karamata.rv_report(F, t_grid)
    out = []
    out.append("# summary")
    out.append("estimated_index,rh_index,potter_violations")
    out.append(",".join([sweep.fmt(rep.estimated_index), sweep.fmt(rep.rh_index),
                         str(len(rep.potter_violations))]))
    out.append("# karamata_ratio")
    out.append("t,ratio")
    out += [f"{sweep.fmt(t)},{sweep.fmt(r)}" for t, r in zip(rep.t_grid, rep.karamata_ratio)]
    out.append("# n_tail_check")
    out.append("n,n_sf_a_n")
    out += [f"{n},{sweep.fmt(v)}" for n, v in rep.n_tail_check]
    out.append("# potter_violations")
    out.append("t,x,bound,observed")
    out += [",".join(sweep.fmt(v) for v in row) for row in rep.potter_violations]
    out.append("# warnings")
    out += [f'"{w}"' for w in rep.warnings]
    _write_text(args, "\n".join(out) + "\n")


def _write_text(args, text):
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_stein_verify(args):
    F = _law(args)
    rep = verify_proposition1(F, grid_size=args.grid_size)
    rows = [{"item": c.item, "test": c.label, "max_slack_f": c.max_slack_f,
             "max_slack_df": c.max_slack_df, "violations": c.violations} for c in rep.checks]
    rows.append({"item": "stein_identity", "test": "max |P(A_p f)|", "max_slack_f": rep.stein_residual,
                 "violations": int(rep.stein_residual > 1e-8)})
    rows.append({"item": "summary", "test": "PASS" if rep.passed else "FAIL",
                 "violations": rep.violations})
    _emit(args, rows, ("item", "test", "max_slack_f", "max_slack_df", "violations"))


def cmd_frechet_compare(args):
    out = sweep.frechet_compare(args.alpha, args.beta, _config(args))
    _emit(args, [out], tuple(out))


def cmd_rate_fit(args):
    rows = sweep.read_sweep(args.input)
    series = sweep.rate_series(rows, args.column)
    rate = None
    if args.dist:
        rate = catalog(args.dist, **parse_params(args.param)).rate
    fit = sweep.fit_rate(series, rate)
    out = [{"slope": fit.slope, "intercept": fit.intercept, "r_squared": fit.r_squared}]
    cols = ["slope", "intercept", "r_squared"]
    if fit.scaled_limits:
        cols += ["n", "scaled"]
        out += [{"n": n, "scaled": v} for n, v in fit.scaled_limits]
    _emit(args, out, cols)


def cmd_table1(args):
    rows = sweep.table1(args.n or (100, 1000, 10_000), cfg=_config(args))
    _emit(args, rows, sweep.TABLE1_COLUMNS)
    if args.plot:
        plotting.plot_table1(rows, args.plot)


def cmd_figure1(args):
    alphas = np.linspace(1.0, 10.0, args.points)
    rows = sweep.figure1(args.n_max, alphas, cfg=_config(args))
    _emit(args, rows, sweep.FIGURE1_COLUMNS)
    if args.plot:
        plotting.plot_figure1(rows, args.plot)


def cmd_report(args):
    """Catalog distance table, Burr scaled curves and a Burr sweep as CSV plus figures."""
    os.makedirs(args.outdir, exist_ok=True)
    cfg = _config(args)
    t1 = sweep.table1(cfg=cfg)
    path = os.path.join(args.outdir, "table1.csv")
    sweep.write_csv(t1, sweep.TABLE1_COLUMNS, path)
    plotting.plot_table1(t1, _sibling(path, "." + args.format))
    f1 = sweep.figure1(cfg=cfg)
    path = os.path.join(args.outdir, "figure1.csv")
    sweep.write_csv(f1, sweep.FIGURE1_COLUMNS, path)
    plotting.plot_figure1(f1, _sibling(path, "." + args.format))
    path = os.path.join(args.outdir, "burr_sweep.csv")
    spec = sweep.SweepSpec("burr12", [10**3, 10**4, 10**5], {"alpha": 2.0, "tau": 3.0},
                           weighted=True, output_path=path)
    rows, _ = sweep.run_sweep(spec, cfg)
    plotting.plot_sweep(rows, _sibling(path, "." + args.format), title="burr12(2, 3)")
    sys.stdout.write("".join(f"{name}\n" for name in sorted(os.listdir(args.outdir))))


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance (abs and rel)")
    common.add_argument("--max-subdiv", type=int, default=2000, help="quadrature subdivision budget")
    common.add_argument("--output", "-o", default=None, help="CSV destination (default stdout)")
    common.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")

    law = argparse.ArgumentParser(add_help=False)
    law.add_argument("--dist", required=True, choices=CATALOG_NAMES)
    law.add_argument("--param", action="append", default=[], metavar="K=V",
                     help="distribution parameter, repeatable")
    law.add_argument("--alpha", type=float, default=None, help="Fréchet index (default: tail index)")

    p = argparse.ArgumentParser(
        prog="steinfrechet",
        description="Reverse-hazard Stein discrepancies between maxima laws and Fréchet limits.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("discrepancy", parents=[common, law], help="Δ or Δ_w for one n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--weighted", action="store_true")
    s.add_argument("--unsafe-weighted", action="store_true")
    s.add_argument("--roles", choices=ROLE_MODES, default="auto")
    s.set_defaults(func=cmd_discrepancy)

    s = sub.add_parser("bounds", parents=[common, law], help="Kol/TV/Wass bounds for one n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="add exact distances")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("oracle", parents=[common, law], help="exact (and Monte Carlo) distances")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mc", action="store_true")
    s.add_argument("--samples", type=int, default=10**6)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("sweep", parents=[common, law], help="one row per n")
    s.add_argument("--n", type=int, nargs="+")
    s.add_argument("--n-log", nargs=3, metavar=("START", "STOP", "COUNT"))
    s.add_argument("--weighted", action="store_true")
    s.add_argument("--unsafe-weighted", action="store_true")
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--svg", default=None, help="log-log plot of the sweep as SVG")
    s.add_argument("--plot", default=None, help="plot path, format from the extension")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("rv-check", parents=[common, law], help="regular-variation diagnostics")
    s.add_argument("--t-max", type=float, default=1e6)
    s.set_defaults(func=cmd_rv_check)

    s = sub.add_parser("stein-verify", parents=[common, law], help="uniform bounds of Stein solutions")
    s.add_argument("--grid-size", type=int, default=1000)
    s.set_defaults(func=cmd_stein_verify)

    s = sub.add_parser("frechet-compare", parents=[common], help="Φ_α against Φ_β in closed form")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.set_defaults(func=cmd_frechet_compare)

    s = sub.add_parser("rate-fit", parents=[common], help="log-log slope of a sweep column")
    s.add_argument("--input", required=True)
    s.add_argument("--column", default="delta")
    s.add_argument("--dist", choices=CATALOG_NAMES, default=None, help="use this row's c_n")
    s.add_argument("--param", action="append", default=[])
    s.set_defaults(func=cmd_rate_fit)

    s = sub.add_parser("table1", parents=[common], help="c_n-scaled distances for the catalog")
    s.add_argument("--n", type=int, nargs="+")
    s.add_argument("--plot", default=None)
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("figure1", parents=[common], help="Burr XII scaled discrepancies against α")
    s.add_argument("--n-max", type=int, default=10**5)
    s.add_argument("--points", type=int, default=19)
    s.add_argument("--plot", default=None)
    s.set_defaults(func=cmd_figure1)

    s = sub.add_parser("report", parents=[common], help="CSV files and figures in one directory")
    s.add_argument("--outdir", required=True)
    s.add_argument("--format", choices=("svg", "png", "pdf"), default="svg")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (QuadratureError, InversionError, AssumptionError) as exc:
        print(f"computation failed [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except (ParameterError, PreconditionError, DomainError) as exc:
        print(f"invalid input [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SteinFrechetError as exc:
        print(f"computation failed [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except ArithmeticError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
