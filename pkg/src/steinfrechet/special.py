"""Gamma-family special functions.

``ln_gamma`` and ``gamma`` delegate to the C library through :mod:`math`
(both are accurate to a few ulps).  The upper incomplete gamma function is
computed here: power series below the seam ``x = s + 1`` and a modified
Lentz continued fraction above it, for any real ``s``.
"""

import math

from .errors import DivergenceError, DomainError, PoleError

EULER_GAMMA = 0.57721566490153286061
_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000
_CF_MIN_X = 1.5


def ln_gamma(x):
    """Return log Γ(x) for x > 0."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def gamma(x):
    """Γ(x) on the real line, poles at the non-positive integers excluded."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x!r}")
    if x > 171.0:
        raise OverflowError("gamma overflows above 171; use ln_gamma")
    return math.gamma(x)


def log_gamma_ratio(a, b):
    """log(Γ(a)/Γ(b)) for positive a, b, stable for huge arguments."""
    return ln_gamma(a) - ln_gamma(b)


def _lower_series_positive(s, x):
    """Regularized lower gamma P(s, x) for s > 0 by the positive power series."""
    term = 1.0 / s
    total = term
    ap = s
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(s * math.log(x) - x - math.lgamma(s))


def _lower_series_alternating(s, x):
    """γ(s, x) = Σ (-1)^k x^(s+k) / (k! (s+k)), valid for non-integer s."""
    total = 0.0
    fact_term = 1.0  # (-x)^k / k!
    for k in range(_MAX_ITER):
        if k > 0:
            fact_term *= -x / k
        term = fact_term / (s + k)
        total += term
        if k > 2 and abs(term) < abs(total) * _EPS:
            break
    return total * x ** s


def _upper_continued_fraction(s, x):
    """Γ(s, x) by the Legendre continued fraction (modified Lentz)."""
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0.0 else 1.0 / _TINY
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(s * math.log(x) - x) * h


def _e1_series(x):
    """Exponential integral E1(x) = Γ(0, x) for 0 < x ≤ 1."""
    total = 0.0
    term = 1.0
    for k in range(1, _MAX_ITER):
        term *= -x / k
        inc = term / k
        total += inc
        if abs(inc) < _EPS * abs(total):
            break
    return -EULER_GAMMA - math.log(x) - total


def upper_incomplete_gamma(s, x):
    """Γ(s, x) = ∫_x^∞ t^(s-1) e^(-t) dt.

    Parameters
    ----------
    s : float
        Any real order; ``s <= 0`` is allowed when ``x > 0``.
    x : float
        Non-negative lower limit.
    """
    s = float(s)
    x = float(x)
    if x < 0.0:
        raise DomainError(f"upper_incomplete_gamma requires x >= 0, got {x!r}")
    if x == 0.0:
        if s <= 0.0:
            raise DivergenceError(f"Γ({s!r}, 0) diverges")
        return math.exp(math.lgamma(s))
    # the fraction converges slowly for small x; negative non-integer
    # orders take the alternating series there instead
    if x > s + 1.0 and not (s < 0.0 and x <= _CF_MIN_X):
        return _upper_continued_fraction(s, x)
    if s < 0.0 and s == math.floor(s):
        # Γ(s, x) = (x^s e^(-x) - Γ(s+1, x)) / (-s), climbing to E1
        return (math.exp(s * math.log(x) - x) - upper_incomplete_gamma(s + 1.0, x)) / -s
    if s > 0.0:
        p = _lower_series_positive(s, x)
        return math.exp(math.lgamma(s) + math.log1p(-p))
    if s == 0.0:
        return _e1_series(x)
    return gamma(s) - _lower_series_alternating(s, x)
