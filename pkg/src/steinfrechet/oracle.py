"""Kolmogorov, total-variation and Wasserstein-1 distances from exact cdfs.

Laws may carry an atom at their left endpoint (maxima laws do); both the
Kolmogorov sup and the TV half-L1 account for it.  A seeded Monte Carlo
estimate is available as an independent cross-check.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .distributions import FrechetLaw, maxima
from .errors import InfiniteMeanError, InversionError, ParameterError
from .quadrature import QuadratureConfig, find_sign_changes, integrate

ORACLE_CONFIG = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-10, max_subdivisions=4000)
GRID_POINTS = 10_000
REFINE_TOP = 10
# one-sigma equivalent of the DKW inequality: 2 exp(-2 N eps^2) = 0.3173
_DKW_ONE_SIGMA = math.sqrt(math.log(2.0 / 0.3173) / 2.0)


@dataclass
class OracleReport:
    kol: float
    kol_err: float
    tv: Optional[float] = None
    tv_err: Optional[float] = None
    wass: Optional[float] = None
    wass_err: Optional[float] = None
    method: str = "exact_cdf"
    samples: Optional[int] = None


def _lower(P, Q):
    return min(P.integration_lower(), Q.integration_lower())


def _grid(P, Q, size):
    z = np.linspace(math.log(1e-14 / (1 - 1e-14)), math.log((1 - 1e-14) / 1e-14), size // 2)
    u = 1.0 / (1.0 + np.exp(-z))
    x = np.concatenate([np.asarray(P.quantile(u)), np.asarray(Q.quantile(u))])
    x = np.unique(x[np.isfinite(x)])
    return x


def _cdf_gap(P, Q):
    def d(x):
        x = np.asarray(x, dtype=float)
        a = P.cdf(x)
        b = Q.cdf(x)
        # in the upper tail the survival functions carry the digits
        upper = np.minimum(a, b) > 0.5
        return np.where(upper, np.abs(Q.sf(x) - P.sf(x)), np.abs(a - b))

    return d


def kolmogorov(P, Q, grid_points=GRID_POINTS, refine=REFINE_TOP, return_error=False):
    """``sup_x |F_P(x) - F_Q(x)|``, left-endpoint jumps included.

    The sup is located on a merged quantile grid of both laws and then
    refined by golden-section search on the brackets of the best grid
    points.  With ``return_error`` a ``(value, error)`` pair is returned.
    """
    d = _cdf_gap(P, Q)
    x = _grid(P, Q, grid_points)
    y = d(x)
    best = float(np.max(y)) if len(y) else 0.0
    err = 0.0
    # jumps at atoms: compare the other cdf with the left limit 0
    for A, B in ((P, Q), (Q, P)):
        if A.atom > 0 and math.isfinite(A.left):
            c = np.array(A.left)
            best = max(best, float(B.cdf(c)), abs(float(A.cdf(c)) - float(B.cdf(c))))
    top = np.argsort(y)[::-1][:refine]
    for i in top:
        lo = x[max(i - 1, 0)]
        hi = x[min(i + 1, len(x) - 1)]
        if not lo < hi:
            continue
        res = minimize_scalar(lambda t: -float(d(np.array([t]))[0]), bracket=None,
                              bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-13 * max(1.0, abs(x[i]))})
        val = -float(res.fun)
        if val > best:
            # flatness of the maximum over the final bracket
            step = 1e-7 * max(abs(res.x), 1e-300)
            near = d(np.array([res.x - step, res.x + step]))
            err = max(err, float(np.max(np.abs(near - val))))
            best = val
    err = float(err) + 4 * float(np.finfo(float).eps)
    return (best, err) if return_error else best


def _split_points(P, Q, s, lo):
    pts = set()
    for law in (P, Q):
        pts |= set(find_sign_changes(s, lo, math.inf, 256, quantile=law.quantile))
        pts |= set(law.breakpoints(lo))
        if math.isfinite(law.left) and law.left > lo:
            pts.add(float(law.left))
    return sorted(pts)


def total_variation(P, Q, cfg=None, return_error=False):
    """``(q_0 + ∫|p - q|)/2`` with both atoms counted."""
    cfg = cfg or ORACLE_CONFIG
    lo = _lower(P, Q)

    def s(x):
        return P.pdf(x) - Q.pdf(x)

    pts = _split_points(P, Q, s, lo)
    res = integrate(lambda x: np.abs(s(x)), lo, math.inf, cfg, points=pts)
    # mass left of the truncation point
    tail = sum(float(L.cdf(np.array(lo))) for L in (P, Q) if not math.isfinite(L.left))
    value = 0.5 * (P.atom + Q.atom + res.value)
    err = 0.5 * (res.error_estimate + tail)
    value = min(max(value, 0.0), 1.0)
    return (value, err) if return_error else value


def _finite_mean(law):
    idx = getattr(law, "tail_index", None)
    if idx is not None and idx <= 1:
        raise InfiniteMeanError(f"{law.name} has an infinite mean (tail index {idx:g})")


def wasserstein(P, Q, cfg=None, return_error=False):
    """``∫ |F_P - F_Q| dx`` over the union of supports.

    The upper tail uses survival-function differences, so no truncation is
    needed there; only a ``-inf`` left endpoint is truncated.
    """
    for law in (P, Q):
        _finite_mean(law)
    cfg = cfg or ORACLE_CONFIG
    lo = _lower(P, Q)
    d = _cdf_gap(P, Q)

    def s(x):
        return P.cdf(x) - Q.cdf(x)

    pts = _split_points(P, Q, s, lo)
    res = integrate(d, lo, math.inf, cfg, points=pts)
    err = res.error_estimate
    for L in (P, Q):
        if not math.isfinite(L.left):
            # ∫_{-inf}^{lo} F <= |lo| F(lo) for the catalog tails
            err += abs(lo) * float(L.cdf(np.array(lo)))
    return (res.value, err) if return_error else res.value


def exact_distances(P, Q, cfg=None, with_wass=True):
    """All three exact distances in one :class:`OracleReport`."""
    kol, kerr = kolmogorov(P, Q, return_error=True)
    tv, terr = total_variation(P, Q, cfg, return_error=True)
    rep = OracleReport(kol, kerr, tv, terr)
    if with_wass:
        try:
            rep.wass, rep.wass_err = wasserstein(P, Q, cfg, return_error=True)
        except InfiniteMeanError:
            pass
    return rep


def monte_carlo_distances(F, n, alpha=None, samples=10**6, seed=0, a_n=None):
    """Seeded Monte Carlo Kol and Wass between the maxima law and Φ_α.

    Maxima are drawn by inversion, ``M = F_n^{-1}(V)`` with ``V`` uniform,
    and the Fréchet sample is ``Φ_α^{-1}(V)`` from the same ``V``.  Both
    samples are then sorted alike, so the mean absolute gap is the
    sorted-sample L1 estimate of Wass.  ``kol_err`` is a one-sigma DKW band
    and ``wass_err`` the standard error of the mean.
    """
    samples = int(samples)
    if samples < 1000:
        raise ParameterError(f"samples must be >= 1000, got {samples}")
    alpha = F.tail_index if alpha is None else float(alpha)
    if alpha is None:
        raise ParameterError(f"{F.name} has no tail index; pass alpha")
    Fn = maxima(F, n, a_n)
    phi = FrechetLaw(alpha)
    rng = np.random.default_rng(seed)
    v = rng.random(samples)
    v = np.where(v > 0, v, np.finfo(float).tiny)
    m = np.asarray(Fn.quantile(v), dtype=float)
    if not np.all(np.isfinite(m)):
        raise InversionError(f"{F.name}: quantile inversion produced non-finite maxima")
    m.sort()
    target = np.asarray(phi.cdf(m))
    i = np.arange(1, samples + 1)
    kol = float(max(np.max(i / samples - target), np.max(target - (i - 1) / samples)))
    kol_err = _DKW_ONE_SIGMA / math.sqrt(samples)
    rep = OracleReport(kol, kol_err, method="monte_carlo", samples=samples)
    if alpha > 1:
        y = np.sort(np.asarray(phi.quantile(v)))
        gap = np.abs(m - y)
        rep.wass = float(gap.mean())
        rep.wass_err = float(gap.std(ddof=1) / math.sqrt(samples))
    return rep
