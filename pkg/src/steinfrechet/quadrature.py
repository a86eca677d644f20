"""Adaptive Gauss-Kronrod integration, sign-change isolation and bisection.

The integrator is a globally adaptive 21-point Kronrod / 10-point Gauss rule
with the QUADPACK error heuristic.  Infinite limits are mapped to the unit
interval by ``x = a + t / (1 - t)`` (and its mirror image), so breakpoints
given in ``x`` are carried over to ``t``.  Integrands must accept and return
numpy arrays.
"""

import heapq
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import QuadratureError

# QUADPACK qk21 abscissae (positive half, descending) and weights.
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600225929021,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651328,
])
_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
_KW = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
_GW = np.zeros(21)
# Gauss nodes are the odd-indexed Kronrod abscissae (1, 3, ..., 9) on each side.
for _i, _w in enumerate(_WG):
    _GW[2 * _i + 1] = _w
    _GW[20 - (2 * _i + 1)] = _w

_UNDERFLOW = 1e-300
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 2000
    probe_points: int = 256

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.probe_points < 2:
            raise ValueError("probe_points must be >= 2")

    def target(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_CONFIG = QuadratureConfig()


@dataclass
class QuadratureResult:
    value: float
    error_estimate: float
    subdivisions_used: int
    kinks: list = field(default_factory=list)


def _mapping(a, b):
    """Return (g, dg, t_lo, t_hi, to_t): x = g(t) on [t_lo, t_hi]."""
    if math.isfinite(a) and math.isfinite(b):
        return (lambda t: t, lambda t: np.ones_like(t), a, b, lambda x: x)
    if math.isfinite(a):
        def g(t):
            return a + t / (1.0 - t)

        def dg(t):
            return 1.0 / (1.0 - t) ** 2

        return g, dg, 0.0, 1.0, lambda x: (x - a) / (1.0 + x - a)
    if math.isfinite(b):
        def g(t):
            return b - (1.0 - t) / t

        def dg(t):
            return 1.0 / t ** 2

        return g, dg, 0.0, 1.0, lambda x: 1.0 / (1.0 + b - x)
    raise ValueError("doubly infinite intervals must be split by the caller")


def _panel_rule(f, g, dg, lo, hi):
    """Apply the 21-point pair on a batch of panels at once."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    centre = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    t = centre[:, None] + half[:, None] * _NODES[None, :]
    x = g(t)
    with np.errstate(all="ignore"):
        y = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape) * dg(t)
    y = np.where(np.abs(y) < _UNDERFLOW, 0.0, y)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)]
        raise QuadratureError(f"integrand not finite at x={bad[:3]}")
    resk = half * (y @ _KW)
    resg = half * (y @ _GW)
    resabs = np.abs(half) * (np.abs(y) @ _KW)
    mean = resk / np.where(half != 0, 2.0 * half, 1.0)
    resasc = np.abs(half) * (np.abs(y - mean[:, None]) @ _KW)
    err = np.abs(resk - resg)
    with np.errstate(all="ignore"):
        scaled = np.where(resasc > 0, resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5), err)
    floor = 50.0 * _EPS * resabs
    err = np.where(resabs > _UNDERFLOW / (50 * _EPS), np.maximum(floor, scaled), scaled)
    return resk, err


def _single_interval(f, a, b, cfg, points):
    """Integrate on one finite-or-half-infinite interval; returns (value, err, nsub)."""
    g, dg, t_lo, t_hi, to_t = _mapping(a, b)
    cuts = sorted({float(to_t(p)) for p in points if a < p < b})
    edges = [t_lo] + [c for c in cuts if t_lo < c < t_hi] + [t_hi]
    lo = np.array(edges[:-1])
    hi = np.array(edges[1:])
    vals, errs = _panel_rule(f, g, dg, lo, hi)
    # heap keyed by -err; the counter makes ties deterministic
    heap = []
    panels = {}
    for k in range(len(lo)):
        panels[k] = (lo[k], hi[k], vals[k], errs[k])
        heapq.heappush(heap, (-errs[k], k))
    counter = len(lo)
    total = float(np.sum(vals))
    err_total = float(np.sum(errs))
    nsub = len(lo)
    while err_total > cfg.target(total):
        if nsub >= cfg.max_subdivisions:
            value = math.fsum(p[2] for p in panels.values())
            raise QuadratureError(
                f"subdivision budget {cfg.max_subdivisions} exhausted on [{a}, {b}]",
                QuadratureResult(value, err_total, nsub),
            )
        _, k = heapq.heappop(heap)
        plo, phi, pval, perr = panels.pop(k)
        mid = 0.5 * (plo + phi)
        if not (plo < mid < phi):
            # panel cannot be split further in floating point
            panels[k] = (plo, phi, pval, perr)
            break
        v2, e2 = _panel_rule(f, g, dg, [plo, mid], [mid, phi])
        for j, (l, h) in enumerate(((plo, mid), (mid, phi))):
            panels[counter] = (l, h, v2[j], e2[j])
            heapq.heappush(heap, (-e2[j], counter))
            counter += 1
        total += float(v2.sum()) - pval
        err_total += float(e2.sum()) - perr
        nsub += 1
    ordered = sorted(panels.values(), key=lambda p: p[0])
    value = math.fsum(p[2] for p in ordered)
    err = math.fsum(p[3] for p in ordered)
    return value, err, nsub


def integrate(f, a, b, cfg=None, points=()):
    """Integrate ``f`` over ``(a, b)``; either limit may be infinite.

    ``points`` are breakpoints (kinks, discontinuities) at which the interval
    is split before adaptation starts.  Raises :class:`QuadratureError` when
    the subdivision budget runs out; the exception carries the best estimate.
    """
    cfg = cfg or DEFAULT_CONFIG
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError(f"integrate requires a < b, got ({a}, {b})")
    kinks = sorted(float(p) for p in points if a < p < b)
    if math.isinf(a) and math.isinf(b):
        mid = kinks[len(kinks) // 2] if kinks else 0.0
        pieces = [(a, mid), (mid, b)]
    elif math.isinf(a) or math.isinf(b):
        pieces = [(a, b)]
    else:
        pieces = [(a, b)]
    value = 0.0
    err = 0.0
    nsub = 0
    for lo, hi in pieces:
        try:
            v, e, n = _single_interval(f, lo, hi, cfg, kinks)
        except QuadratureError as exc:
            if exc.result is not None:
                exc.result.value += value
                exc.result.error_estimate += err
                exc.result.kinks = kinks
            raise
        value += v
        err += e
        nsub += n
    return QuadratureResult(value, err, nsub, kinks)


def probe_grid(a, b, probes, quantile=None):
    """Probe abscissae for root isolation on ``(a, b)``.

    With a quantile function the probes are the images of probabilities
    spaced evenly in logit scale over ``[1e-12, 1 - 1e-12]``, which puts
    them log-densely in both tails of the law.
    """
    if quantile is not None:
        z = np.linspace(math.log(1e-12 / (1 - 1e-12)), math.log((1 - 1e-12) / 1e-12), probes)
        u = 1.0 / (1.0 + np.exp(-z))
        x = np.asarray(quantile(u), dtype=float)
    elif math.isinf(b) and math.isinf(a):
        half = np.geomspace(1e-12, 1e12, probes // 2)
        x = np.concatenate([-half[::-1], half])
    elif math.isinf(b):
        x = a + np.geomspace(1e-12, 1e12, probes)
    elif math.isinf(a):
        x = b - np.geomspace(1e-12, 1e12, probes)[::-1]
    elif a > 0:
        x = np.geomspace(a, b, probes + 2)[1:-1]
    else:
        x = np.linspace(a, b, probes + 2)[1:-1]
    x = np.unique(x[np.isfinite(x)])
    return x[(x > a) & (x < b)]


def find_sign_changes(s, a, b, probes=256, quantile=None, rtol=1e-13, noise=1e-13):
    """Roots of ``s`` on ``(a, b)`` isolated by sign changes on a probe grid.

    Roots lying between two probes of equal sign are missed; raise
    ``probes`` if the integrand oscillates.  Each bracket is refined with
    Brent's method to ``rtol`` relative.  Probe values below ``noise`` in
    magnitude are treated as round-off and dropped before brackets are formed.
    """
    x = probe_grid(a, b, probes, quantile)
    if len(x) < 2:
        return []
    with np.errstate(all="ignore"):
        y = np.asarray(s(x), dtype=float)
    # probes at the round-off level carry no sign information
    ok = np.isfinite(y) & (np.abs(y) > noise)
    x, y = x[ok], y[ok]

    def scalar(v):
        return float(np.asarray(s(np.array([v])), dtype=float)[0])

    roots = []
    for i in np.flatnonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0):
        r = brentq(scalar, float(x[i]), float(x[i + 1]), xtol=1e-300, rtol=max(rtol, 4 * _EPS))
        roots.append(float(r))
    return roots


def bisect_decreasing(g, target, lo, hi, rtol=1e-14, max_iter=200, log_space=True):
    """Vectorized bisection solving ``g(x) = target`` for decreasing ``g``.

    ``lo``/``hi`` must bracket every target (``g(lo) >= target >= g(hi)``).
    With ``log_space`` the midpoint is geometric, which suits positive
    brackets spanning many decades.
    """
    target = np.asarray(target, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), target.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), target.shape).copy()
    for _ in range(max_iter):
        if log_space:
            mid = np.sqrt(lo * hi)
        else:
            mid = 0.5 * (lo + hi)
        above = g(mid) > target
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
        if np.all(np.abs(hi - lo) <= rtol * np.abs(hi)):
            break
    return 0.5 * (lo + hi)
