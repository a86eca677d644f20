"""Reverse-hazard Stein discrepancies and the distance bounds built on them.

For laws P (atomless, reference) and Q (integrating measure) with
``left(Q) >= left(P)``::

    Δ(Q|P)   = ∫ |1 - r_P/r_Q| dQ_ac
    Δ_w(Q|P) = ∫ x |1 - r_P/r_Q| dQ_ac

bound ``Kol <= Δ + q0``, ``TV <= 2Δ + q0`` and, when P has mean μ,
``left(P) >= 0`` and ``q0 = 0``, ``Wass <= 2μΔ + 3Δ_w``.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .distributions import FrechetLaw, maxima, mean, scaling_sequence
from .errors import InfiniteMeanError, PreconditionError
from .quadrature import DEFAULT_CONFIG, find_sign_changes, integrate
from .special import gamma, ln_gamma, upper_incomplete_gamma


@dataclass
class DiscrepancyResult:
    value: float
    error_estimate: float
    kinks: list
    roles: dict
    weighted: bool = False
    subdivisions_used: int = 0

    @property
    def upper(self):
        return self.value + self.error_estimate


@dataclass
class BoundReport:
    delta: float
    q_0: float
    kol_bound: float
    tv_bound: float
    delta_w: Optional[float] = None
    mu: Optional[float] = None
    wass_bound: Optional[float] = None
    delta_err: float = 0.0
    delta_w_err: float = 0.0
    roles: dict = field(default_factory=dict)
    wass_note: str = ""

    @property
    def kol_err(self):
        return self.delta_err

    @property
    def tv_err(self):
        return 2.0 * self.delta_err

    @property
    def wass_err(self):
        if self.wass_bound is None:
            return None
        return 2.0 * abs(self.mu) * self.delta_err + 3.0 * self.delta_w_err


def _check_roles(P, Q, weighted):
    """Raise naming the violated hypothesis, or return None."""
    if P.atom > 0:
        raise PreconditionError(f"reference law P={P.name} has an atom p_0={P.atom:g} > 0")
    if Q.left < P.left:
        raise PreconditionError(f"c_Q={Q.left:g} < c_P={P.left:g}: Q must live inside the support of P")
    if weighted:
        for law in (P, Q):
            if law.tail_index is not None and law.tail_index <= 1:
                raise InfiniteMeanError(f"{law.name} has infinite mean (tail index {law.tail_index:g})")
        if P.left < 0:
            raise PreconditionError(f"weighted discrepancy needs c_P >= 0, got c_P={P.left:g}")
        if Q.atom > 0:
            raise PreconditionError(f"weighted discrepancy needs q_0 = 0, got q_0={Q.atom:g}")


def _discrepancy(P, Q, cfg, weighted, strict):
    cfg = cfg or DEFAULT_CONFIG
    if strict:
        _check_roles(P, Q, weighted)
    else:
        try:
            _check_roles(P, Q, weighted)
        except InfiniteMeanError:
            # a divergent integral, not just a missing guarantee
            raise
        except PreconditionError as exc:
            warnings.warn(f"computing outside the bound's hypotheses: {exc}", stacklevel=3)

    lo = Q.integration_lower()

    def ratio_gap(x):
        rp = P.reverse_hazard(x)
        rq = Q.reverse_hazard(x)
        return 1.0 - rp / rq

    kinks = find_sign_changes(ratio_gap, lo, math.inf, cfg.probe_points, quantile=Q.quantile)

    def integrand(x):
        # q (1 - r_P/r_Q) = q - r_P Q
        v = np.abs(Q.pdf(x) - P.reverse_hazard(x) * Q.cdf(x))
        if weighted:
            v = v * x
        return np.where(x > Q.left, v, 0.0)

    points = sorted(set(kinks) | set(Q.breakpoints(lo)))
    res = integrate(integrand, lo, math.inf, cfg, points=points)
    err = res.error_estimate
    if not math.isfinite(Q.left) and lo > -math.inf:
        # mass of Q below the truncation point bounds the neglected part only loosely
        err += float(Q.cdf(np.array(lo)))
    roles = {"P": P.name, "Q": Q.name}
    return DiscrepancyResult(max(res.value, 0.0), err, kinks, roles, weighted, res.subdivisions_used)


def delta(P, Q, cfg=None, strict=True):
    """Δ(Q|P) = ∫ |1 - r_P/r_Q| q over ``(c_Q, ∞)``."""
    return _discrepancy(P, Q, cfg, False, strict)


def delta_w(P, Q, cfg=None, strict=True):
    """Δ_w(Q|P) = ∫ x |1 - r_P/r_Q| q over ``(c_Q, ∞)``."""
    return _discrepancy(P, Q, cfg, True, strict)


ROLE_MODES = ("auto", "frechet_q", "frechet_p")


def frechet_roles(F, n, alpha=None, a_n=None, roles="auto"):
    """Return ``(P, Q)`` for comparing the maxima law F_n with Φ_α.

    ``auto`` follows the supports: when ``c_F <= 0`` the Fréchet law is the
    integrating measure Q and F_n is the reference P; otherwise the roles are
    swapped.
    """
    if roles not in ROLE_MODES:
        raise PreconditionError(f"roles must be one of {ROLE_MODES}")
    alpha = F.tail_index if alpha is None else alpha
    if alpha is None:
        raise PreconditionError(f"{F.name} has no tail index; pass alpha")
    Fn = maxima(F, n, a_n)
    phi = FrechetLaw(float(alpha))
    if roles == "auto":
        roles = "frechet_q" if F.left <= 0 else "frechet_p"
    if roles == "frechet_q":
        return Fn, phi
    return phi, Fn


def frechet_delta(F, n, alpha=None, weighted=False, cfg=None, a_n=None, roles="auto",
                  unsafe_weighted=False):
    """Discrepancy between the maxima law F_n and Φ_α with roles fixed by the supports.

    ``unsafe_weighted`` computes Δ_w even when c_F < 0 (reference F_n with a
    negative endpoint); the number then carries no Wasserstein guarantee.
    """
    P, Q = frechet_roles(F, n, alpha, a_n, roles)
    strict = roles == "auto"
    if weighted and F.left < 0:
        if not unsafe_weighted:
            raise PreconditionError(
                f"{F.name} has c_F={F.left:g} < 0, so the reference F_n has a negative endpoint; "
                "the weighted discrepancy has no distance bound here (use unsafe_weighted)")
        warnings.warn("weighted discrepancy computed without a Wasserstein guarantee", stacklevel=2)
        strict = False
    res = _discrepancy(P, Q, cfg, weighted, strict)
    res.roles["mode"] = "frechet_q" if isinstance(Q, FrechetLaw) else "frechet_p"
    if not strict:
        res.roles["guarantee"] = False
    return res


def bounds(P, Q, cfg=None, strict=True, weighted=True):
    """Kolmogorov / TV / Wasserstein upper bounds from the discrepancies.

    With ``weighted=False`` the Wasserstein part is skipped.
    """
    d = delta(P, Q, cfg, strict)
    q0 = float(Q.atom)
    report = BoundReport(delta=d.value, q_0=q0, kol_bound=d.value + q0,
                         tv_bound=2.0 * d.value + q0, delta_err=d.error_estimate,
                         roles=d.roles)
    if not weighted:
        report.wass_note = "not requested"
        return report
    try:
        _check_roles(P, Q, True)
        mu = mean(P, cfg)
        mean(Q, cfg)
    except PreconditionError as exc:
        report.wass_note = str(exc)
        return report
    dw = delta_w(P, Q, cfg, strict)
    report.delta_w = dw.value
    report.delta_w_err = dw.error_estimate
    report.mu = mu
    report.wass_bound = 2.0 * mu * d.value + 3.0 * dw.value
    return report


def frechet_bounds(F, n, alpha=None, cfg=None, a_n=None, weighted=True):
    """:func:`bounds` for the maxima law of ``F`` against Φ_α, roles set by the supports."""
    P, Q = frechet_roles(F, n, alpha, a_n)
    return bounds(P, Q, cfg, weighted=weighted)


# ---------------------------------------------------------------------------
# closed forms

def frechet_vs_frechet(alpha, beta, weighted=False):
    """Closed forms of Δ(Φ_α|Φ_β) and Δ_w(Φ_α|Φ_β) for β > α."""
    alpha = float(alpha)
    beta = float(beta)
    if not beta > alpha > 0:
        raise PreconditionError("closed form needs beta > alpha > 0")
    y0 = (alpha / beta) ** (alpha / (beta - alpha))
    if not weighted:
        return (1.0 - 2.0 * math.exp(-y0) - gamma((alpha + beta) / alpha)
                + 2.0 * beta / alpha * upper_incomplete_gamma(beta / alpha, y0))
    if not alpha > 1:
        raise InfiniteMeanError("weighted closed form needs alpha > 1")
    a = (alpha - 1.0) / alpha
    b = (beta - 1.0) / alpha
    return -(gamma(-1.0 / alpha) + beta * gamma(b)
             + 2.0 * alpha * upper_incomplete_gamma(a, y0)
             - 2.0 * beta * upper_incomplete_gamma(b, y0)) / alpha


def pareto_delta(n):
    """Δ(F_n|Φ_α) for Pareto maxima with a_n = n^(1/α): 1/(n+1) for every α."""
    return 1.0 / (n + 1.0)


def pareto_delta_w(alpha, n):
    """n^(-1/α) Γ(n+1) Γ(2-1/α) / Γ(n+2-1/α), evaluated in log space."""
    if not alpha > 1:
        raise InfiniteMeanError("weighted Pareto closed form needs alpha > 1")
    logv = (-math.log(n) / alpha + ln_gamma(n + 1.0) + ln_gamma(2.0 - 1.0 / alpha)
            - ln_gamma(n + 2.0 - 1.0 / alpha))
    return math.exp(logv)


def cauchy_ratio(u):
    """R(u) = 1 / ((1 + π²u²)(1 - arctan(πu)/π)); Δ(Φ_1|F_n) = n ∫ |1-R| e^(-nu) du."""
    u = np.asarray(u, dtype=float)
    return 1.0 / ((1.0 + (np.pi * u) ** 2) * (1.0 - np.arctan(np.pi * u) / np.pi))


def burr_ratio(y, tau):
    """R(y) = y^(1+τ) / ((1+y)((1+y)^τ - 1)) for Burr XII maxima."""
    y = np.asarray(y, dtype=float)
    return y ** (1.0 + tau) / ((1.0 + y) * np.expm1(tau * np.log1p(y)))


def u_n_diagnostic(F, n, a_n=None):
    """u_n = n a_n r_F(a_n) / α, which tends to 1 along a valid normalization."""
    alpha = F.tail_index
    if alpha is None:
        raise PreconditionError(f"{F.name} has no tail index")
    if a_n is None:
        a_n = scaling_sequence(F, n)
    return float(n * a_n * F.reverse_hazard(np.array(a_n)) / alpha)
