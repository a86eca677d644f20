"""Solutions of the reverse-hazard Stein equation and their uniform bounds.

For an atomless reference law P with density p the operator is
``A_p f = (P/p) f' + f`` and the h-Stein equation ``A_p f = h - P(h)`` has
the bounded solution::

    f_h(x) = (1/P(x)) ∫_{c_P}^x (h - P(h)) dP = (1/P(x)) ∫_x^∞ (P(h) - h) dP.

Both integrals are taken in probability space, ``v = P(t)``, where they
read ``∫ (h(P^{-1}(v)) - P(h)) dv``; the left form is used below the median
and the right form above it.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ParameterError, PreconditionError
from .quadrature import QuadratureConfig, _panel_rule, integrate

# segment integrals are relative to tiny probabilities in the tails
SOLVER_CONFIG = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-12, max_subdivisions=400)
_TAIL_CONFIG = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-12, max_subdivisions=5000)
SLACK_TOL = 1e-9
_BELOW_ONE = float(np.nextafter(1.0, 0.0))


@dataclass(frozen=True)
class TestFunction:
    """A test function with its discontinuities or kinks listed in ``points``."""

    fn: Callable
    kind: str = "general"
    points: tuple = ()
    label: str = ""

    __test__ = False

    def __call__(self, x):
        return np.asarray(self.fn(np.asarray(x, dtype=float)), dtype=float)


def halfline(z):
    """``1[x <= z]``."""
    z = float(z)
    return TestFunction(lambda x: (x <= z).astype(float), "halfline", (z,), f"1[x<={z:.6g}]")


def set_indicator(intervals):
    """Indicator of a finite union of intervals ``(a, b]``; ends may be infinite."""
    intervals = tuple((float(a), float(b)) for a, b in intervals)
    for a, b in intervals:
        if not a < b:
            raise ParameterError(f"empty interval ({a}, {b}]")

    def fn(x):
        out = np.zeros_like(x)
        for a, b in intervals:
            out = np.where((x > a) & (x <= b), 1.0, out)
        return out

    pts = tuple(sorted({e for ab in intervals for e in ab if math.isfinite(e)}))
    return TestFunction(fn, "set", pts, f"1_B{intervals}")


def lipschitz(fn, points=(), label="lip"):
    """Wrap a 1-Lipschitz ``fn``; the caller vouches for the constant."""
    return TestFunction(fn, "lipschitz", tuple(points), label)


def lipschitz_family():
    """A few 1-Lipschitz functions with different shapes."""
    return [
        lipschitz(lambda x: x, label="id"),
        lipschitz(lambda x: np.minimum(x, 5.0), (5.0,), "min(x,5)"),
        lipschitz(lambda x: np.abs(x - 2.0), (2.0,), "|x-2|"),
        lipschitz(lambda x: np.sin(np.minimum(x, 3 * np.pi)), (3 * np.pi,), "sin(min(x,3pi))"),
        lipschitz(lambda x: -np.minimum(x, 1.5), (1.5,), "-min(x,1.5)"),
    ]


# ---------------------------------------------------------------------------
# probability-space segment integration

def _segment_integrals(g, edges, cfg, cuts=()):
    """∫ g over consecutive ``[edges[i], edges[i+1]]``, cut at ``cuts``.

    One batched 21-point pass covers every panel; panels whose error
    estimate misses the target are redone adaptively.
    """
    edges = np.asarray(edges, dtype=float)
    cuts = np.asarray([c for c in cuts if edges[0] < c < edges[-1]], dtype=float)
    fine = np.unique(np.concatenate([edges, cuts]))
    owner = np.searchsorted(edges, fine[:-1], side="right") - 1
    lo, hi = fine[:-1], fine[1:]

    def ident(t):
        return t

    def one(t):
        return np.ones_like(t)

    vals, errs = _panel_rule(g, ident, one, lo, hi)
    bad = errs > np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(vals))
    for k in np.flatnonzero(bad):
        res = integrate(g, lo[k], hi[k], cfg)
        vals[k], errs[k] = res.value, res.error_estimate
    seg = np.zeros(len(edges) - 1)
    seg_err = np.zeros(len(edges) - 1)
    np.add.at(seg, owner, vals)
    np.add.at(seg_err, owner, errs)
    return seg, seg_err


def expectation(P, h, cfg=None):
    """``P(h)`` by quadrature in x, split at the breakpoints of ``P`` and ``h``."""
    cfg = cfg or _TAIL_CONFIG
    lo = P.integration_lower()
    pts = sorted(set(P.breakpoints(lo)) | {p for p in getattr(h, "points", ()) if p > lo})

    def integrand(x):
        return h(x) * P.pdf(x)

    try:
        res = integrate(integrand, lo, math.inf, cfg, points=pts)
    except Exception as exc:
        raise PreconditionError(f"test function not integrable under {P.name}: {exc}") from exc
    if not math.isfinite(res.value):
        raise PreconditionError(f"test function not integrable under {P.name}")
    return res.value


@dataclass(frozen=True)
class SteinSolution:
    """``f_h`` for a reference law and test function.

    ``evaluate`` and ``derivative_form`` are vectorized; the latter returns
    ``(P/p) f_h'`` read off the Stein equation.
    """

    reference: object
    test: TestFunction
    mean_h: float
    cfg: QuadratureConfig = field(default=SOLVER_CONFIG)

    def _in_u(self, v):
        v = np.clip(v, 0.0, _BELOW_ONE)
        return self.test(self.reference.quantile(v)) - self.mean_h

    def _upper_tail(self, x0):
        """∫_{x0}^∞ (h - P(h)) p dx."""
        P = self.reference
        pts = sorted(set(P.breakpoints(x0)) | {p for p in self.test.points if p > x0})
        res = integrate(lambda x: self.test(x) * P.pdf(x), x0, math.inf, _TAIL_CONFIG, points=pts)
        return res.value - self.mean_h * float(P.sf(np.array(x0)))

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        out = np.zeros_like(flat)
        P = self.reference
        inside = flat > P.left
        if not np.any(inside):
            return out.reshape(x.shape)
        xs = flat[inside]
        u = np.asarray(P.cdf(xs), dtype=float)
        order = np.argsort(u, kind="stable")
        us = u[order]
        cuts = [float(P.cdf(np.array(p))) for p in self.test.points]
        vals = np.empty_like(us)
        left = us <= 0.5
        if np.any(left):
            ul = us[left]
            edges = np.concatenate([[0.0], ul])
            seg, _ = _segment_integrals(self._in_u, np.unique(edges), self.cfg, cuts)
            cum = np.cumsum(seg)
            idx = np.searchsorted(np.unique(edges), ul) - 1
            # where P underflows, f_h sits at its boundary limit h - P(h)
            xl = xs[order][left]
            with np.errstate(all="ignore"):
                vals[left] = np.where(ul > 0, cum[np.maximum(idx, 0)] / ul,
                                      self.test(xl) - self.mean_h)
        if np.any(~left):
            ur = us[~left]
            uniq = np.unique(ur)
            if len(uniq) > 1:
                seg, _ = _segment_integrals(self._in_u, uniq, self.cfg, cuts)
            else:
                seg = np.zeros(0)
            # ∫_u^1 (h - P(h)) dv accumulated from the top; the last piece is
            # done in x because h(P^{-1}(v)) may blow up as v -> 1
            top = self._upper_tail(float(np.max(xs[order][~left])))
            tail = np.concatenate([np.cumsum(seg[::-1])[::-1], [0.0]]) + top
            idx = np.searchsorted(uniq, ur)
            vals[~left] = -tail[idx] / ur
        res = np.empty_like(us)
        res[order] = vals
        out[inside] = res
        return out.reshape(x.shape)

    __call__ = evaluate

    def derivative_form(self, x):
        x = np.asarray(x, dtype=float)
        v = self.test(x) - self.mean_h - self.evaluate(x)
        return np.where(x > self.reference.left, v, 0.0)

    def seam_gap(self):
        """|left form - right form| at the median of P."""
        m = 0.5
        lower, _ = _segment_integrals(self._in_u, [0.0, m], self.cfg,
                                      [float(self.reference.cdf(np.array(p))) for p in self.test.points])
        upper = self._upper_tail(float(self.reference.quantile(np.array(m))))
        return abs(lower[0] / m + upper / m)


def _check_reference(P):
    if P.atom > 0:
        raise PreconditionError(f"reference law {P.name} has an atom")


def solve(P, h, cfg=None):
    """Solve the Stein equation for ``h`` under the atomless law ``P``."""
    _check_reference(P)
    if not isinstance(h, TestFunction):
        h = TestFunction(h)
    cfg = cfg or SOLVER_CONFIG
    return SteinSolution(P, h, expectation(P, h), cfg)


def indicator_solution(P, z):
    """Closed form of ``f_h`` for ``h = 1[. <= z]``: ``P(x∧z) P̄(x∨z) / P(x)``."""
    _check_reference(P)
    z = float(z)
    if not z > P.left:
        raise ParameterError(f"z={z:g} <= c_P={P.left:g}: the indicator is degenerate under P")
    Pz = float(P.cdf(np.array(z)))
    Sz = float(P.sf(np.array(z)))

    def f(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            hi = Pz * P.sf(x) / P.cdf(x)
        v = np.where(x <= z, Sz, hi)
        return np.where(x > P.left, v, 0.0)

    return f


def indicator_scaled_derivative(P, z):
    """``(P/p) f'`` for the half-line solution: 0 left of ``z``, ``-P(z)/P(x)`` right of it."""
    z = float(z)
    Pz = float(P.cdf(np.array(z)))

    def g(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            v = np.where(x <= z, 0.0, -Pz / P.cdf(x))
        return np.where(x > P.left, v, 0.0)

    return g


def operator(P, f, scaled_derivative):
    """``A_p f = (P/p) f' + f`` on ``(c_P, ∞)``, zero elsewhere."""

    def a(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > P.left, scaled_derivative(x) + f(x), 0.0)

    return a


def stein_identity_residual(P, f, scaled_derivative, points=(), cfg=None):
    """``P(A_p f)``, which vanishes for f in the Stein class."""
    cfg = cfg or QuadratureConfig(abs_tol=1e-13, rel_tol=1e-10)
    a = operator(P, f, scaled_derivative)
    lo = P.integration_lower()
    pts = sorted(set(P.breakpoints(lo)) | {p for p in points if p > lo})
    res = integrate(lambda x: a(x) * P.pdf(x), lo, math.inf, cfg, points=pts)
    return res.value


def _tail_pieces(P, x, cfg):
    """``A(x) = ∫_{c_P}^x P`` and ``B(x) = ∫_x^∞ P̄`` on a sorted grid."""
    x = np.asarray(x, dtype=float)
    lo = P.integration_lower()
    pts = P.breakpoints(lo)
    edges = np.concatenate([[lo], x])
    a_seg = np.array([integrate(P.cdf, l, h, cfg, points=pts).value if h > l else 0.0
                      for l, h in zip(edges[:-1], edges[1:])])
    A = np.cumsum(a_seg)
    b_seg = np.array([integrate(P.sf, l, h, cfg, points=pts).value if h > l else 0.0
                      for l, h in zip(x[:-1], x[1:])])
    last = integrate(P.sf, x[-1], math.inf, cfg, points=pts).value
    B = np.concatenate([np.cumsum(b_seg[::-1])[::-1], [0.0]]) + last
    return A, B


def envelope(P, x, cfg=None):
    """Return ``(m, e1, e2)`` at the points ``x`` (scalar or array).

    ``m(x) = P|x - id|``, ``e1 = (P ∧ P̄)/P`` and
    ``e2 = (∫_{c_P}^x P ∧ ∫_x^∞ P̄)/P``; ``m = ∫_{c_P}^x P + ∫_x^∞ P̄``.
    """
    from .distributions import mean

    mean(P)  # raises on an infinite mean
    cfg = cfg or QuadratureConfig(abs_tol=1e-13, rel_tol=1e-11)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= P.left):
        raise ParameterError(f"envelope needs x > c_P={P.left:g}")
    order = np.argsort(x)
    A, B = _tail_pieces(P, x[order], cfg)
    Pc = np.asarray(P.cdf(x[order]), dtype=float)
    Ps = np.asarray(P.sf(x[order]), dtype=float)
    m = np.empty_like(x)
    e1 = np.empty_like(x)
    e2 = np.empty_like(x)
    m[order] = A + B
    e1[order] = np.minimum(Pc, Ps) / Pc
    e2[order] = np.minimum(A, B) / Pc
    if scalar:
        return float(m[0]), float(e1[0]), float(e2[0])
    return m, e1, e2


def quantile_grid(P, size=1000, lo=1e-6, hi=1 - 1e-6):
    """``size`` points of P at probabilities evenly spaced in ``[lo, hi]``."""
    return np.asarray(P.quantile(np.linspace(lo, hi, size)), dtype=float)


@dataclass
class CheckResult:
    item: str
    label: str
    max_slack_f: float
    max_slack_df: float
    violations: int


@dataclass
class Proposition1Report:
    law: str
    grid_size: int
    checks: list = field(default_factory=list)
    stein_residual: float = 0.0
    closed_form_gap: float = 0.0
    seam_gap: float = 0.0

    @property
    def violations(self):
        return sum(c.violations for c in self.checks)

    @property
    def passed(self):
        return self.violations == 0

    def max_slack(self, item):
        rows = [c for c in self.checks if c.item == item]
        return max(max(c.max_slack_f, c.max_slack_df) for c in rows) if rows else float("nan")


def _record(item, label, f, df, bound_f, bound_df, tol):
    sf = f - bound_f
    sd = df - bound_df
    n = int(np.sum(sf > tol) + np.sum(sd > tol))
    return CheckResult(item, label, float(np.max(sf)), float(np.max(sd)), n)


def verify_proposition1(P, grid=None, grid_size=1000, n_halfline=20, tol=SLACK_TOL, cfg=None):
    """Check the three uniform bounds of the Stein solutions on a grid.

    Slack is ``observed - bound``; a violation is a slack above ``tol``.
    Item 3 is skipped for laws with an infinite mean.
    """
    from .distributions import mean
    from .errors import InfiniteMeanError

    _check_reference(P)
    cfg = cfg or SOLVER_CONFIG
    x = np.sort(quantile_grid(P, grid_size) if grid is None else np.asarray(grid, dtype=float))
    x = x[x > P.left]
    report = Proposition1Report(P.name, len(x))

    # item 2: half-lines, solved numerically and compared with the closed form
    zs = np.asarray(P.quantile(np.linspace(0.02, 0.98, n_halfline)), dtype=float)
    residual = 0.0
    gap = 0.0
    for z in zs:
        sol = solve(P, halfline(z), cfg)
        f = sol.evaluate(x)
        df = sol.derivative_form(x)
        report.checks.append(_record("halfline", sol.test.label, np.abs(f), np.abs(df), 1.0, 1.0, tol))
        gap = max(gap, float(np.max(np.abs(f - indicator_solution(P, z)(x)))))
        residual = max(residual, abs(stein_identity_residual(
            P, indicator_solution(P, z), indicator_scaled_derivative(P, z), (z,))))
    report.stein_residual = residual
    report.closed_form_gap = gap

    # item 1: sets
    qs = np.asarray(P.quantile([0.1, 0.3, 0.5, 0.7, 0.9]), dtype=float)
    sets = [
        [(qs[0], qs[2])],
        [(qs[1], qs[3])],
        [(qs[3], math.inf)],
        [(-math.inf, qs[0]), (qs[2], qs[4])],
        [(qs[0], qs[1]), (qs[2], qs[3]), (qs[4], math.inf)],
    ]
    seams = []
    for intervals in sets:
        sol = solve(P, set_indicator(intervals), cfg)
        f = sol.evaluate(x)
        df = sol.derivative_form(x)
        report.checks.append(_record("set", sol.test.label, np.abs(f), np.abs(df), 1.0, 2.0, tol))
        seams.append(sol.seam_gap())

    # item 3: Lipschitz
    try:
        mean(P)
    except InfiniteMeanError:
        report.seam_gap = max(seams)
        return report
    m, e1, e2 = envelope(P, x)
    for h in lipschitz_family():
        sol = solve(P, h, cfg)
        f = sol.evaluate(x)
        df = sol.derivative_form(x)
        report.checks.append(_record("lipschitz", h.label, np.abs(f), np.abs(df),
                                     m * e1 + e2, m * (1.0 + e1) + e2, tol))
        seams.append(sol.seam_gap())
    report.seam_gap = max(seams)
    return report


def transfer_check(P, Q, z_grid, kol_bound):
    """``[(z, |Q(z) - P(z)|, kol_bound)]`` for half-line test functions."""
    z = np.asarray(z_grid, dtype=float)
    lhs = np.abs(np.asarray(Q.cdf(z)) - np.asarray(P.cdf(z)))
    return [(float(a), float(b), float(kol_bound)) for a, b in zip(z, lhs)]
