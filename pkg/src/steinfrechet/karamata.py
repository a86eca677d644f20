"""Regular-variation diagnostics computed from analytic functions.

Nothing here looks at samples: indices are read off ratios f(tx)/f(t) of
the exact functions, which keeps numerical and statistical error apart.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .distributions import scaling_sequence

DEFAULT_T_GRID = np.geomspace(1e2, 1e6, 20)
DEFAULT_X_GRID = np.geomspace(1e-2, 1e2, 41)


@dataclass
class RVReport:
    estimated_index: float
    t_grid: list
    ratio_table: list
    karamata_ratio: list
    potter_violations: list = field(default_factory=list)
    n_tail_check: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    rh_index: Optional[float] = None


def _ratio_table(f, t_grid, x_grid):
    t = np.asarray(t_grid, dtype=float)[:, None]
    x = np.asarray(x_grid, dtype=float)[None, :]
    with np.errstate(all="ignore"):
        num = np.asarray(f(t * x), dtype=float)
        den = np.asarray(f(t), dtype=float)
    if np.any(~(num > 0)) or np.any(~(den > 0)):
        raise ValueError("estimate_index needs f > 0 on every probed point")
    return num / den


def estimate_index(f, t_grid=DEFAULT_T_GRID, x_grid=DEFAULT_X_GRID):
    """Index ρ of ``f`` from log(f(tx)/f(t)) ~ ρ log x.

    One least-squares slope per t in the top quartile of ``t_grid``; the
    slopes are averaged.
    """
    t_grid = np.sort(np.asarray(t_grid, dtype=float))
    top = t_grid[int(math.floor(0.75 * (len(t_grid) - 1))):]
    table = _ratio_table(f, top, x_grid)
    lx = np.log(np.asarray(x_grid, dtype=float))
    slopes = [np.polyfit(lx, np.log(row), 1)[0] for row in table]
    return float(np.mean(slopes))


def karamata_limit(F, t_grid=DEFAULT_T_GRID):
    """t f(t) / (1 - F(t)) along ``t_grid``; tends to α for F in DA(α).

    Points where the survival function underflows are dropped.
    """
    t = np.asarray(t_grid, dtype=float)
    sf = F.sf(t)
    keep = sf > 1e-300
    t = t[keep]
    return [float(v) for v in t * F.pdf(t) / sf[keep]], [float(v) for v in t]


def potter_check(f, rho, delta, t_grid, x_grid, xi=1.0):
    """Probe Potter-type envelopes of f(tx)/f(t) at finite t.

    Two forms are probed:

    * small-x: ``f(tx)/f(t) <= c x^(rho - delta)`` for ``x <= xi``,
    * two-sided: ``|f(tx)/f(t) - x^rho| <= eps max(x^(rho+delta), x^(rho-delta))``.

    The constants are only known to exist beyond some t0.  The smallest t of
    the grid plays t0: ``c`` and ``eps`` are fitted there (5% headroom) and
    every larger t must respect them.  This validates the shape of the bound,
    never the asymptotic statement itself.  Returns ``(violations, constants)``; a
    violation is ``(t, x, bound, observed)``.
    """
    t_grid = np.sort(np.asarray(t_grid, dtype=float))
    x_grid = np.asarray(x_grid, dtype=float)
    table = _ratio_table(f, t_grid, x_grid)
    small = x_grid <= xi
    env_small = x_grid ** (rho - delta)
    env_two = np.maximum(x_grid ** (rho + delta), x_grid ** (rho - delta))
    dev = np.abs(table - x_grid ** rho) / env_two
    c = 1.05 * float(np.max(table[0, small] / env_small[small])) if np.any(small) else 0.0
    eps = 1.05 * float(np.max(dev[0])) + 1e-12
    violations = []
    for i, t in enumerate(t_grid):
        for j, x in enumerate(x_grid):
            if small[j] and table[i, j] > c * env_small[j]:
                violations.append((float(t), float(x), float(c * env_small[j]), float(table[i, j])))
            if dev[i, j] > eps:
                violations.append((float(t), float(x), float(eps * env_two[j]),
                                   float(abs(table[i, j] - x ** rho))))
    return violations, {"c": c, "eps": eps}


def da_check(F, n_grid, a_n=None):
    """``[(n, n (1 - F(a_n)))]``; the sequence must tend to 1.

    ``a_n`` may be a callable ``n -> a_n`` overriding the catalog scale.
    """
    out = []
    for n in n_grid:
        a = a_n(n) if callable(a_n) else scaling_sequence(F, n)
        out.append((int(n), float(n * F.sf(np.array(a)))))
    return out


def rv_report(F, t_grid=DEFAULT_T_GRID, x_grid=DEFAULT_X_GRID, n_grid=(10, 100, 1000, 10**4)):
    """Collect the diagnostics for one law into an :class:`RVReport`.

    The survival function is the probed function; the reverse-hazard index
    goes into ``rh_index``.  Grid points where ``t x`` leaves the support or
    the survival function underflows are dropped with a warning.
    """
    warnings = []
    t_grid = np.sort(np.asarray(t_grid, dtype=float))
    x_grid = np.asarray(x_grid, dtype=float)
    keep = (t_grid * x_grid.min() > F.left) & (F.sf(t_grid * x_grid.max()) > 1e-300)
    if not np.all(keep):
        warnings.append(f"t grid truncated to {int(keep.sum())} of {len(t_grid)} points")
        t_grid = t_grid[keep]
    if len(t_grid) == 0:
        raise ValueError("no usable t left on the grid")
    table = _ratio_table(F.sf, t_grid, x_grid)
    kr, _ = karamata_limit(F, t_grid)
    violations = []
    if F.tail_index is not None:
        violations, _ = potter_check(F.sf, -F.tail_index, 0.5, t_grid, x_grid)
    warnings.append("Potter constants are fitted at the smallest t; the check tests the bound's form only")
    rep = RVReport(
        estimated_index=estimate_index(F.sf, t_grid, x_grid),
        t_grid=list(map(float, t_grid)),
        ratio_table=table.tolist(),
        karamata_ratio=list(map(float, kr)),
        potter_violations=violations,
        n_tail_check=da_check(F, n_grid),
        warnings=warnings,
    )
    rep.rh_index = estimate_index(F.reverse_hazard, t_grid, x_grid)
    return rep
