"""Sweeps over n, rate fits and the tabulated reproductions.

CSV output is deterministic: fixed column order, ``.17g`` numbers, LF line
endings, empty fields for quantities that do not apply.
"""

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .discrepancy import bounds, delta, delta_w, frechet_delta, frechet_roles, frechet_vs_frechet
from .distributions import FrechetLaw, TABLE1_ROWS, acceptance_catalog, catalog, mean, scaling_sequence
from .errors import InfiniteMeanError, ParameterError, PreconditionError, SteinFrechetError
from .oracle import exact_distances

SWEEP_COLUMNS = ("n", "delta", "delta_err", "delta_w", "delta_w_err", "kol_bound",
                 "tv_bound", "wass_bound", "kol_oracle", "tv_oracle", "wass_oracle")


def fmt(v):
    """Full-precision field; ``None`` becomes an empty field."""
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(rows, columns, path=None):
    """Write ``rows`` (dicts) as CSV; returns the text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row.get(c)) for c in columns])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


@dataclass
class SweepSpec:
    dist: str
    n_values: list
    params: dict = field(default_factory=dict)
    alpha: Optional[float] = None
    weighted: bool = False
    with_oracle: bool = False
    output_path: Optional[str] = None
    unsafe_weighted: bool = False

    def __post_init__(self):
        ns = list(self.n_values)
        if not ns:
            raise ParameterError("n_values must not be empty")
        for n in ns:
            if int(n) != n or n < 1:
                raise ParameterError(f"n values must be positive integers, got {n!r}")
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ParameterError("n values must be strictly increasing")
        self.n_values = [int(n) for n in ns]


def _error_row(n, exc):
    code = getattr(exc, "code", type(exc).__name__)
    return {"n": n, "delta": f"ERROR:{code}"}


def sweep_row(F, n, alpha=None, weighted=False, with_oracle=False, cfg=None, unsafe_weighted=False):
    """One sweep row as a dict keyed by :data:`SWEEP_COLUMNS`."""
    try:
        P, Q = frechet_roles(F, n, alpha)
        d = frechet_delta(F, n, alpha, cfg=cfg)
        q0 = float(Q.atom)
        row = {"n": n, "delta": d.value, "delta_err": d.error_estimate,
               "kol_bound": d.value + q0, "tv_bound": 2.0 * d.value + q0}
        if weighted:
            try:
                dw = frechet_delta(F, n, alpha, weighted=True, cfg=cfg, unsafe_weighted=unsafe_weighted)
                row["delta_w"] = dw.value
                row["delta_w_err"] = dw.error_estimate
                if dw.roles.get("guarantee", True) and P.left >= 0 and q0 == 0:
                    row["wass_bound"] = 2.0 * mean(P, cfg) * d.value + 3.0 * dw.value
            except PreconditionError:
                pass
        if with_oracle:
            rep = exact_distances(P, Q, cfg)
            row["kol_oracle"] = rep.kol
            row["tv_oracle"] = rep.tv
            row["wass_oracle"] = rep.wass
        return row
    except (SteinFrechetError, ArithmeticError, ValueError) as exc:
        return _error_row(n, exc)


def run_sweep(spec, cfg=None, workers=1):
    """Compute every row of ``spec``; writes the CSV when ``output_path`` is set.

    Returns ``(rows, csv_text)``.  A failing row is recorded as
    ``ERROR:<code>`` in the delta column and the sweep carries on.
    """
    F = catalog(spec.dist, **spec.params)

    def one(n):
        return sweep_row(F, n, spec.alpha, spec.weighted, spec.with_oracle, cfg, spec.unsafe_weighted)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, spec.n_values))
    else:
        rows = [one(n) for n in spec.n_values]
    text = write_csv(rows, SWEEP_COLUMNS, spec.output_path)
    return rows, text


def read_sweep(path):
    """Parse a sweep CSV back into dicts of floats (strings kept for ERROR rows)."""
    out = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            row = {}
            for k, v in rec.items():
                if v == "":
                    row[k] = None
                elif v.startswith("ERROR:"):
                    row[k] = v
                else:
                    row[k] = int(v) if k == "n" else float(v)
            out.append(row)
    return out


@dataclass
class RateFit:
    slope: float
    intercept: float
    r_squared: float
    scaled_limits: list = field(default_factory=list)


def fit_rate(series, rate=None):
    """Least-squares line through ``(log n, log value)``.

    ``rate`` (a callable ``n -> c_n``) fills ``scaled_limits`` with
    ``(n, c_n * value)``.
    """
    series = [(float(n), float(v)) for n, v in series]
    if len(series) < 3:
        raise ParameterError("fit_rate needs at least 3 points")
    if any(not v > 0 for _, v in series) or any(not n > 0 for n, _ in series):
        raise ParameterError("fit_rate needs positive n and values")
    x = np.log([n for n, _ in series])
    y = np.log([v for _, v in series])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum(resid ** 2))
    r2 = 1.0 if ss_tot <= 1e-300 else min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)
    scaled = [(int(n), rate(n) * v) for n, v in series] if rate else []
    return RateFit(float(slope), float(intercept), r2, scaled)


def frechet_compare(alpha, beta, cfg=None):
    """Closed forms of Δ(Φ_α|Φ_β), Δ_w and the bounds, with quadrature cross-checks."""
    alpha, beta = float(alpha), float(beta)
    if not beta > alpha > 0:
        raise ParameterError(f"frechet-compare needs beta > alpha > 0, got ({alpha:g}, {beta:g})")
    P, Q = FrechetLaw(beta), FrechetLaw(alpha)
    d_cf = frechet_vs_frechet(alpha, beta)
    d_q = delta(P, Q, cfg)
    out = {"alpha": alpha, "beta": beta, "delta_closed": d_cf, "delta_quad": d_q.value,
           "delta_quad_err": d_q.error_estimate, "delta_w_closed": None, "delta_w_quad": None,
           "kol_bound": d_cf, "tv_bound": 2.0 * d_cf, "wass_bound": None,
           "note": ""}
    if alpha > 1:
        dw_cf = frechet_vs_frechet(alpha, beta, weighted=True)
        dw_q = delta_w(P, Q, cfg)
        out.update(delta_w_closed=dw_cf, delta_w_quad=dw_q.value,
                   wass_bound=2.0 * mean(P) * d_cf + 3.0 * dw_cf)
    else:
        out["note"] = "delta_w needs alpha > 1"
    return out


# ---------------------------------------------------------------------------
# tabulated reproductions

TABLE1_COLUMNS = ("dist", "n", "a_n", "c_n", "delta", "kol", "tv", "scaled_kol",
                  "scaled_tv", "limit")


def table1(n_values=(100, 1000, 10_000), laws=None, cfg=None):
    """Distances and ``c_n``-scaled distances for the catalog rows."""
    laws = laws or {k: v for k, v in acceptance_catalog().items() if k in TABLE1_ROWS}
    rows = []
    for name, F in laws.items():
        for n in n_values:
            row = {"dist": name, "n": int(n), "limit": F.limit}
            try:
                a_n = scaling_sequence(F, n)
                P, Q = frechet_roles(F, n)
                c_n = F.rate(n)
                rep = exact_distances(P, Q, cfg, with_wass=False)
                row.update(a_n=a_n, c_n=c_n, delta=frechet_delta(F, n, cfg=cfg).value,
                           kol=rep.kol, tv=rep.tv, scaled_kol=c_n * rep.kol, scaled_tv=c_n * rep.tv)
            except (SteinFrechetError, ArithmeticError, ValueError) as exc:
                row["delta"] = f"ERROR:{getattr(exc, 'code', type(exc).__name__)}"
            rows.append(row)
    return rows


FIGURE1_COLUMNS = ("tau", "alpha", "n", "delta", "delta_w", "scaled_delta", "scaled_delta_w")


def figure1(n=10**5, alphas=None, taus=(3.0, 3.5, 4.0), cfg=None):
    """``n^{1/τ} Δ`` and ``n^{1/τ} Δ_w`` for Burr XII maxima over a grid of α."""
    alphas = np.linspace(1.0, 10.0, 19) if alphas is None else np.asarray(alphas, dtype=float)
    rows = []
    for tau in taus:
        for a in alphas:
            F = catalog("burr12", alpha=float(a), tau=float(tau))
            s = n ** (1.0 / tau)
            row = {"tau": float(tau), "alpha": float(a), "n": int(n)}
            try:
                d = frechet_delta(F, n, cfg=cfg).value
                row.update(delta=d, scaled_delta=s * d)
                dw = frechet_delta(F, n, weighted=True, cfg=cfg).value
                row.update(delta_w=dw, scaled_delta_w=s * dw)
            except InfiniteMeanError:
                pass
            except (SteinFrechetError, ArithmeticError, ValueError) as exc:
                row["delta"] = f"ERROR:{getattr(exc, 'code', type(exc).__name__)}"
            rows.append(row)
    return rows


def rate_series(rows, column="delta"):
    """``[(n, value)]`` from sweep rows, skipping errors and blanks."""
    return [(r["n"], r[column]) for r in rows
            if isinstance(r.get(column), float) and math.isfinite(r[column]) and r[column] > 0]
