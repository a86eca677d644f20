"""Laws with an atom at the left endpoint plus a positive continuous density.

Every law exposes the same vectorized surface: ``cdf``, ``sf``, ``logcdf``,
``pdf`` (density part only), ``reverse_hazard``, ``quantile`` and ``isf``,
together with the left endpoint ``left`` (``-inf`` allowed) and the
starting mass ``atom``.  Three concrete kinds exist:

* :class:`DistributionSpec` built from callables (the catalog entries),
* :class:`FrechetLaw`,
* :class:`MaximaLaw`, the law of ``max(Y_1..Y_n) / a_n``.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import AssumptionError, InfiniteMeanError, InversionError, ParameterError
from .quadrature import DEFAULT_CONFIG, bisect_decreasing, integrate
from .special import gamma, ln_gamma

# lower truncation for laws with an infinite left endpoint
LEFT_TAIL_QUANTILE = 1e-14


def _arr(x):
    return np.asarray(x, dtype=float)


class Law:
    """Shared behaviour.  Subclasses provide ``cdf``/``sf``/``pdf`` at least."""

    def logcdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self.cdf(x))

    def reverse_hazard(self, x):
        """pdf/cdf on ``(left, inf)``, zero elsewhere."""
        x = _arr(x)
        p = self.pdf(x)
        c = self.cdf(x)
        inside = x > self.left
        if np.any(inside & (c <= 0) & (p > 0)):
            bad = x[inside & (c <= 0) & (p > 0)]
            raise AssumptionError(f"{self.name}: cdf vanishes where pdf > 0 (x={bad[:3]})")
        with np.errstate(all="ignore"):
            r = np.where(inside & (c > 0), p / np.where(c > 0, c, 1.0), 0.0)
        return r

    def isf(self, s):
        return self.quantile(1.0 - _arr(s))

    def integration_lower(self):
        """Lower limit used by quadratures over this law."""
        if math.isfinite(self.left):
            return float(self.left)
        return float(self.quantile(LEFT_TAIL_QUANTILE))

    def breakpoints(self, lo=-math.inf, hi=math.inf):
        """Quantiles spread over the bulk and both tails, clipped to ``(lo, hi)``."""
        u = np.array([1e-12, 1e-9, 1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.2, 0.5,
                      0.8, 0.95, 0.99, 0.999, 1 - 1e-4, 1 - 1e-6, 1 - 1e-9, 1 - 1e-12])
        u = u[u > self.atom]
        x = np.unique(self.quantile(u))
        x = x[np.isfinite(x)]
        return [float(v) for v in x if lo < v < hi]

    @property
    def mean(self):
        return mean(self)

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


@dataclass(frozen=True, repr=False)
class DistributionSpec(Law):
    """A law given by callables.

    ``pdf`` is the density part; ``atom`` is the mass sitting at ``left``.
    Optional callables (``sf``, ``logcdf``, ``isf``, ``rh``) supply
    numerically better forms than the generic derivations.
    ``scale_closed_form`` returns the catalog normalizing constant a_n,
    ``rate`` the convergence rate c_n and ``limit`` the constant ℓ.
    """

    name: str
    params: dict
    left: float
    atom: float
    cdf_fn: Callable
    pdf_fn: Callable
    quantile_fn: Optional[Callable] = None
    sf_fn: Optional[Callable] = None
    logcdf_fn: Optional[Callable] = None
    isf_fn: Optional[Callable] = None
    rh_fn: Optional[Callable] = None
    mean_value: Optional[float] = None
    tail_index: Optional[float] = None
    scale_closed_form: Optional[Callable] = None
    rate: Optional[Callable] = None
    limit: Optional[float] = None
    notes: str = ""
    extra: dict = field(default_factory=dict)

    def _mask(self, x, values, below):
        return np.where(x < self.left, below, values)

    def cdf(self, x):
        x = _arr(x)
        with np.errstate(all="ignore"):
            return self._mask(x, self.cdf_fn(x), 0.0)

    def sf(self, x):
        x = _arr(x)
        with np.errstate(all="ignore"):
            v = self.sf_fn(x) if self.sf_fn else 1.0 - self.cdf_fn(x)
        return self._mask(x, v, 1.0)

    def logcdf(self, x):
        x = _arr(x)
        with np.errstate(all="ignore"):
            if self.logcdf_fn:
                v = self.logcdf_fn(x)
            else:
                v = np.log(self.cdf_fn(x))
        return self._mask(x, v, -np.inf)

    def pdf(self, x):
        x = _arr(x)
        with np.errstate(all="ignore"):
            return np.where(x > self.left, self.pdf_fn(x), 0.0)

    def reverse_hazard(self, x):
        if self.rh_fn is None:
            return Law.reverse_hazard(self, x)
        x = _arr(x)
        with np.errstate(all="ignore"):
            return np.where(x > self.left, self.rh_fn(x), 0.0)

    def quantile(self, u):
        u = _arr(u)
        if self.quantile_fn is not None:
            with np.errstate(all="ignore"):
                q = self.quantile_fn(u)
        else:
            q = self._numeric_isf(1.0 - u)
        return np.where(u <= self.atom, self.left, q)

    def isf(self, s):
        s = _arr(s)
        if self.isf_fn is not None:
            with np.errstate(all="ignore"):
                q = self.isf_fn(s)
        elif self.quantile_fn is not None:
            q = self.quantile(1.0 - s)
        else:
            q = self._numeric_isf(s)
        return np.where(s >= 1.0 - self.atom, self.left, q)

    def _numeric_isf(self, s):
        """Invert ``sf`` by bracketing and bisection."""
        s = _arr(s)
        lo = self.left if math.isfinite(self.left) else -1.0
        hi = max(lo, 1.0) * 2.0
        hi_arr = np.full(s.shape, hi)
        for _ in range(2000):
            need = self.sf(hi_arr) > s
            if not np.any(need):
                break
            hi_arr = np.where(need, hi_arr * 2.0, hi_arr)
        else:
            raise InversionError(f"{self.name}: could not bracket the quantile")
        if math.isfinite(self.left) and self.left > 0:
            return bisect_decreasing(self.sf, s, np.full(s.shape, self.left), hi_arr)
        lo_arr = np.full(s.shape, lo)
        for _ in range(2000):
            need = self.sf(lo_arr) < s
            if not np.any(need):
                break
            lo_arr = np.where(need, lo_arr * 2.0 - 1.0, lo_arr)
        return bisect_decreasing(self.sf, s, lo_arr, hi_arr, log_space=False)


@dataclass(frozen=True, repr=False)
class FrechetLaw(Law):
    """Φ_α(x) = exp(-x^-α) on (0, ∞)."""

    alpha: float
    left = 0.0
    atom = 0.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ParameterError("Fréchet index must be positive")

    @property
    def name(self):
        return f"frechet(alpha={self.alpha:g})"

    @property
    def tail_index(self):
        return self.alpha

    def _negpow(self, x):
        with np.errstate(all="ignore"):
            return np.where(x > 0, np.abs(x) ** -self.alpha, np.inf)

    def cdf(self, x):
        return np.exp(-self._negpow(_arr(x)))

    def logcdf(self, x):
        return -self._negpow(_arr(x))

    def sf(self, x):
        return -np.expm1(-self._negpow(_arr(x)))

    def pdf(self, x):
        x = _arr(x)
        y = self._negpow(x)
        with np.errstate(all="ignore"):
            v = self.alpha * y * np.exp(-y) / np.where(x > 0, x, 1.0)
        return np.where(x > 0, v, 0.0)

    def reverse_hazard(self, x):
        x = _arr(x)
        with np.errstate(all="ignore"):
            return np.where(x > 0, self.alpha * np.abs(x) ** (-self.alpha - 1.0), 0.0)

    def quantile(self, u):
        u = _arr(u)
        with np.errstate(all="ignore"):
            return np.where(u > 0, (-np.log(u)) ** (-1.0 / self.alpha), 0.0)

    def isf(self, s):
        s = _arr(s)
        with np.errstate(all="ignore"):
            return (-np.log1p(-s)) ** (-1.0 / self.alpha)

    def integration_lower(self):
        # exp(-x^-α) < 1e-304 below this point
        return 700.0 ** (-1.0 / self.alpha)


class MaximaLaw(Law):
    """Law of ``max(Y_1, ..., Y_n) / a_n`` for i.i.d. ``Y_i ~ base`` (b_n = 0)."""

    def __init__(self, base, n, a_n):
        if int(n) != n or n < 1:
            raise ParameterError(f"n must be a positive integer, got {n!r}")
        if not a_n > 0:
            raise ParameterError(f"a_n must be positive, got {a_n!r}")
        self.base = base
        self.n = int(n)
        self.a_n = float(a_n)
        self.left = base.left / self.a_n if math.isfinite(base.left) else -math.inf
        # starting mass f_0^n, computed in log space
        self.atom = math.exp(self.n * math.log(base.atom)) if base.atom > 0 else 0.0
        self.tail_index = base.tail_index
        self.name = f"maxima({base.name}, n={self.n}, a_n={self.a_n:.6g})"

    def logcdf(self, x):
        return self.n * self.base.logcdf(self.a_n * _arr(x))

    def cdf(self, x):
        return np.exp(self.logcdf(x))

    def sf(self, x):
        return -np.expm1(self.logcdf(x))

    def pdf(self, x):
        y = self.a_n * _arr(x)
        with np.errstate(all="ignore"):
            v = self.n * self.a_n * self.base.pdf(y) * np.exp((self.n - 1) * self.base.logcdf(y))
        return np.where(np.isfinite(v), v, 0.0)

    def reverse_hazard(self, x):
        return self.n * self.a_n * self.base.reverse_hazard(self.a_n * _arr(x))

    def quantile(self, u):
        u = _arr(u)
        with np.errstate(divide="ignore"):
            s = -np.expm1(np.log(u) / self.n)
        return self.base.isf(s) / self.a_n

    def isf(self, s):
        s = _arr(s)
        return self.base.isf(-np.expm1(np.log1p(-s) / self.n)) / self.a_n


# ---------------------------------------------------------------------------
# catalog

def _pareto(alpha):
    a = float(alpha)
    return DistributionSpec(
        name="pareto", params={"alpha": a}, left=1.0, atom=0.0,
        cdf_fn=lambda x: -np.expm1(-a * np.log(x)),
        sf_fn=lambda x: x ** -a,
        logcdf_fn=lambda x: np.log1p(-(x ** -a)),
        pdf_fn=lambda x: a * x ** (-a - 1.0),
        rh_fn=lambda x: a / (x * np.expm1(a * np.log(x))),
        quantile_fn=lambda u: (1.0 - u) ** (-1.0 / a),
        isf_fn=lambda s: s ** (-1.0 / a),
        mean_value=a / (a - 1.0) if a > 1 else None,
        tail_index=a,
        scale_closed_form=lambda n: n ** (1.0 / a),
        rate=lambda n: n, limit=2 * math.exp(-2),
    )


def _cauchy():
    return DistributionSpec(
        name="cauchy", params={}, left=-math.inf, atom=0.0,
        cdf_fn=lambda x: np.arctan2(1.0, -x) / np.pi,
        sf_fn=lambda x: np.arctan2(1.0, x) / np.pi,
        pdf_fn=lambda x: 1.0 / (np.pi * (1.0 + x * x)),
        quantile_fn=lambda u: -1.0 / np.tan(np.pi * u),
        isf_fn=lambda s: 1.0 / np.tan(np.pi * s),
        tail_index=1.0,
        scale_closed_form=lambda n: n / math.pi,
        rate=lambda n: n, limit=2 * math.exp(-2),
        notes="closed-form a_n = n/pi is asymptotic; exact quantile is tan(pi(1/2 - 1/n))",
    )


def _loglogistic(alpha):
    a = float(alpha)
    return DistributionSpec(
        name="loglogistic", params={"alpha": a}, left=0.0, atom=0.0,
        cdf_fn=lambda x: 1.0 / (1.0 + x ** -a),
        sf_fn=lambda x: 1.0 / (1.0 + x ** a),
        logcdf_fn=lambda x: -np.log1p(x ** -a),
        pdf_fn=lambda x: a * x ** (a - 1.0) / (1.0 + x ** a) ** 2,
        rh_fn=lambda x: a / (x * (1.0 + x ** a)),
        quantile_fn=lambda u: (u / (1.0 - u)) ** (1.0 / a),
        isf_fn=lambda s: ((1.0 - s) / s) ** (1.0 / a),
        mean_value=(math.pi / a) / math.sin(math.pi / a) if a > 1 else None,
        tail_index=a,
        scale_closed_form=lambda n: n ** (1.0 / a),
        rate=lambda n: n, limit=2 * math.exp(-2),
    )


def _gpd(xi, sigma=None):
    xi = float(xi)
    sigma = xi if sigma is None else float(sigma)
    if not 0 < xi < 1:
        raise ParameterError("gpd requires 0 < xi < 1")
    if not sigma > 0:
        raise ParameterError("gpd requires sigma > 0")
    k = 1.0 / xi

    def logsf(x):
        return -k * np.log1p(xi * x / sigma)

    return DistributionSpec(
        name="gpd", params={"xi": xi, "sigma": sigma}, left=0.0, atom=0.0,
        cdf_fn=lambda x: -np.expm1(logsf(x)),
        sf_fn=lambda x: np.exp(logsf(x)),
        logcdf_fn=lambda x: np.log1p(-np.exp(logsf(x))),
        pdf_fn=lambda x: np.exp(logsf(x)) / (sigma + xi * x),
        rh_fn=lambda x: np.exp(logsf(x)) / ((sigma + xi * x) * -np.expm1(logsf(x))),
        quantile_fn=lambda u: sigma * np.expm1(-xi * np.log1p(-u)) / xi,
        isf_fn=lambda s: sigma * np.expm1(-xi * np.log(s)) / xi,
        mean_value=sigma / (1.0 - xi),
        tail_index=k,
        scale_closed_form=lambda n: n ** xi,
        rate=lambda n: n, limit=2 * math.exp(-2),
        notes="sigma defaults to xi, the scale for which a_n = n^xi normalizes exactly",
    )


def _burr12(alpha, tau):
    a, t = float(alpha), float(tau)
    if not t > 1:
        raise ParameterError("burr12 requires tau > 1")
    if not a > 0:
        raise ParameterError("burr12 requires alpha > 0")

    def logsf(x):
        return -t * np.log1p(x ** a)

    idx = a * t
    mean_value = None
    if idx > 1:
        mean_value = math.exp(ln_gamma(t - 1.0 / a) + ln_gamma(1.0 + 1.0 / a) - ln_gamma(t))
    return DistributionSpec(
        name="burr12", params={"alpha": a, "tau": t}, left=0.0, atom=0.0,
        cdf_fn=lambda x: -np.expm1(logsf(x)),
        sf_fn=lambda x: np.exp(logsf(x)),
        logcdf_fn=lambda x: np.log1p(-np.exp(logsf(x))),
        pdf_fn=lambda x: t * a * x ** (a - 1.0) * np.exp(logsf(x)) / (1.0 + x ** a),
        rh_fn=lambda x: t * a * x ** (a - 1.0) * np.exp(logsf(x))
        / ((1.0 + x ** a) * -np.expm1(logsf(x))),
        quantile_fn=lambda u: np.expm1(-np.log1p(-u) / t) ** (1.0 / a),
        isf_fn=lambda s: np.expm1(-np.log(s) / t) ** (1.0 / a),
        mean_value=mean_value,
        tail_index=idx,
        scale_closed_form=lambda n: n ** (1.0 / idx),
        rate=lambda n: n, limit=2 * math.exp(-2),
    )


TWO_TERM_CONVENTIONS = ("table", "root", "halved")


def _two_term_pareto(alpha, beta, convention="table"):
    """1 - x^-α - x^-(α+β), β > α.

    ``convention`` picks the reading of the row: ``table`` (left endpoint 1
    as printed, rejected because F(1) < 0), ``root`` (left endpoint moved to
    the zero of F) or ``halved`` (survival halved, so F(1) = 0 and the
    printed a_n = (n/2)^(1/α) is the asymptotic quantile).
    """
    a, b = float(alpha), float(beta)
    if not b > a > 0:
        raise ParameterError("two_term_pareto requires beta > alpha > 0")
    if convention not in TWO_TERM_CONVENTIONS:
        raise ParameterError(f"unknown convention {convention!r}; choose from {TWO_TERM_CONVENTIONS}")
    w = 0.5 if convention == "halved" else 1.0

    def sf(x):
        return w * (x ** -a + x ** (-a - b))

    def pdf(x):
        return w * (a * x ** (-a - 1.0) + (a + b) * x ** (-a - b - 1.0))

    left = 1.0
    if convention == "table":
        f_left = 1.0 - sf(np.array(1.0))
        if f_left < 0:
            raise ParameterError(
                f"two_term_pareto: F(1) = {float(f_left):g} < 0 with left endpoint 1; "
                "pass convention='root' or convention='halved'")
    elif convention == "root":
        left = float(bisect_decreasing(lambda x: sf(x), np.array(1.0), np.array(1.0), np.array(2.0 ** (2.0 / a) + 2.0)))
    return DistributionSpec(
        name="two_term_pareto", params={"alpha": a, "beta": b, "convention": convention},
        left=left, atom=0.0,
        cdf_fn=lambda x: np.maximum(1.0 - sf(x), 0.0),
        sf_fn=sf,
        logcdf_fn=lambda x: np.log1p(-sf(x)),
        pdf_fn=pdf,
        tail_index=a,
        mean_value=None,
        scale_closed_form=lambda n: (n / 2.0) ** (1.0 / a),
        rate=lambda n: n, limit=2 * math.exp(-2),
    )


def _loglog_corrected(alpha):
    a = float(alpha)
    left = math.exp(math.e)

    def sf(x):
        return x ** -a / np.log(np.log(x))

    def pdf(x):
        lx = np.log(x)
        ll = np.log(lx)
        return x ** (-a - 1.0) * (a / ll + 1.0 / (ll * ll * lx))

    return DistributionSpec(
        name="loglog_corrected", params={"alpha": a}, left=left,
        atom=float(-math.expm1(-math.e * a)),
        cdf_fn=lambda x: 1.0 - sf(x),
        sf_fn=sf,
        logcdf_fn=lambda x: np.log1p(-sf(x)),
        pdf_fn=pdf,
        tail_index=a,
        scale_closed_form=lambda n: (n / math.log(math.log(n))) ** (1.0 / a) if n >= 3 else None,
        rate=lambda n: math.log(math.log(n)), limit=None,
    )


def _log_corrected(alpha):
    a = float(alpha)

    def sf(x):
        return x ** -a / (1.0 + np.log(x))

    def pdf(x):
        l1 = 1.0 + np.log(x)
        return x ** (-a - 1.0) * (a / l1 + 1.0 / (l1 * l1))

    return DistributionSpec(
        name="log_corrected", params={"alpha": a}, left=1.0, atom=0.0,
        cdf_fn=lambda x: 1.0 - sf(x),
        sf_fn=sf,
        logcdf_fn=lambda x: np.log1p(-sf(x)),
        pdf_fn=pdf,
        tail_index=a,
        mean_value=None,
        scale_closed_form=lambda n: (n / math.log(n)) ** (1.0 / a) if n >= 2 else None,
        rate=lambda n: math.log(n) / math.log(math.log(n)), limit=None,
    )


def _frechet(alpha):
    return FrechetLaw(float(alpha))


_BUILDERS = {
    "pareto": (_pareto, {"alpha": 2.0}),
    "cauchy": (_cauchy, {}),
    "loglogistic": (_loglogistic, {"alpha": 2.0}),
    "gpd": (_gpd, {"xi": 0.5}),
    "burr12": (_burr12, {"alpha": 2.0, "tau": 3.0}),
    "two_term_pareto": (_two_term_pareto, {"alpha": 1.0, "beta": 2.0}),
    "loglog_corrected": (_loglog_corrected, {"alpha": 2.0}),
    "log_corrected": (_log_corrected, {"alpha": 2.0}),
    "frechet": (_frechet, {"alpha": 2.0}),
}

CATALOG_NAMES = tuple(_BUILDERS)
TABLE1_ROWS = CATALOG_NAMES[:-1]


def catalog(name, **params):
    """Build a catalog law.  Missing parameters take the defaults below.

    =================  ===========================  =====================
    name               parameters (default)          closed-form a_n
    =================  ===========================  =====================
    pareto             alpha (2)                     n^(1/α)
    cauchy             -                             n/π
    loglogistic        alpha (2)                     n^(1/α)
    gpd                xi (0.5), sigma (= xi)        n^ξ
    burr12             alpha (2), tau (3)            n^(1/(ατ))
    two_term_pareto    alpha (1), beta (2),          (n/2)^(1/α)
                       convention ("table")
    loglog_corrected   alpha (2)                     (n/log log n)^(1/α)
    log_corrected      alpha (2)                     (n/log n)^(1/α)
    frechet            alpha (2)                     n^(1/α)
    =================  ===========================  =====================
    """
    try:
        builder, defaults = _BUILDERS[name]
    except KeyError:
        raise ParameterError(f"unknown distribution {name!r}; known: {', '.join(CATALOG_NAMES)}") from None
    unknown = set(params) - set(defaults) - ({"sigma"} if name == "gpd" else set()) \
        - ({"convention"} if name == "two_term_pareto" else set())
    if unknown:
        raise ParameterError(f"{name}: unexpected parameters {sorted(unknown)}")
    kwargs = dict(defaults)
    kwargs.update(params)
    for key, value in kwargs.items():
        if key != "convention" and value is not None and not (float(value) > 0):
            raise ParameterError(f"{name}: parameter {key} must be positive")
    return builder(**kwargs)


# log rows at alpha = 1: the tabulated a_n of the log-corrected row only
# normalizes there, and the log-log row is kept alongside it
_ACCEPTANCE_PARAMS = {
    "two_term_pareto": {"convention": "halved"},
    "loglog_corrected": {"alpha": 1.0},
    "log_corrected": {"alpha": 1.0},
}


def acceptance_catalog():
    """The fixed parameter set used by the acceptance suite, one law per row."""
    laws = {}
    for name in CATALOG_NAMES:
        kwargs = dict(_ACCEPTANCE_PARAMS.get(name, {}))
        laws[name] = catalog(name, **kwargs)
    return laws


def parse_params(pairs):
    """``["alpha=2", "tau=3"]`` -> ``{"alpha": 2.0, "tau": 3.0}``."""
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise ParameterError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        key = key.strip()
        value = value.strip()
        try:
            out[key] = float(value)
        except ValueError:
            out[key] = value
    return out


# ---------------------------------------------------------------------------
# operations

def reverse_hazard(law, x):
    """r(x) = pdf(x)/cdf(x) on ``(left, inf)``, zero at and below the endpoint."""
    return law.reverse_hazard(x)


def scaling_sequence(spec, n, numeric=False):
    """a_n = F^←(1 - 1/n).

    The catalog closed form is used when available; ``numeric=True`` forces
    bracketing plus bisection on ``sf(a) = 1/n`` to 1e-12 relative.
    """
    if n < 1 or int(n) != n:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    if isinstance(spec, FrechetLaw):
        if not numeric:
            return float(n) ** (1.0 / spec.alpha)
    closed = getattr(spec, "scale_closed_form", None)
    if not numeric and closed is not None:
        value = closed(n)
        if value is not None and value > 0 and math.isfinite(value):
            return float(value)
    if n == 1:
        raise InversionError(f"{spec.name}: a_1 = F^<-(0) is not a finite scale")
    target = 1.0 / n
    lo = spec.left if math.isfinite(spec.left) else -1.0
    if spec.sf(np.array(lo)) <= target:
        raise InversionError(f"{spec.name}: 1 - 1/n falls inside the atom at the left endpoint")
    hi = max(abs(lo), 1.0) * 2.0
    for _ in range(2000):
        if spec.sf(np.array(hi)) <= target:
            break
        hi *= 2.0
    else:
        raise InversionError(f"{spec.name}: could not bracket F^<-(1 - 1/{n})")
    lo_b = max(lo, hi / 2.0) if hi > 2.0 else lo
    a = bisect_decreasing(spec.sf, np.array(target), np.array(lo_b), np.array(hi),
                          rtol=1e-13, log_space=lo_b > 0)
    return float(a)


def maxima(spec, n, a_n=None, numeric=False):
    """The law of ``max(Y_1..Y_n)/a_n``; ``a_n`` defaults to :func:`scaling_sequence`."""
    if a_n is None:
        a_n = scaling_sequence(spec, n, numeric=numeric)
    return MaximaLaw(spec, n, a_n)


def mean(law, cfg=None):
    """Mean of a law: closed form when known, else ∫ sf - ∫ cdf by quadrature."""
    idx = law.tail_index
    if idx is not None and idx <= 1:
        raise InfiniteMeanError(f"{law.name}: tail index {idx:g} <= 1, the mean is infinite")
    if isinstance(law, FrechetLaw):
        return gamma(1.0 - 1.0 / law.alpha)
    value = getattr(law, "mean_value", None)
    if value is not None:
        return float(value)
    cfg = cfg or DEFAULT_CONFIG
    left = law.left
    if math.isfinite(left) and left >= 0:
        upper = integrate(law.sf, left, math.inf, cfg, points=law.breakpoints(left)).value
        return left + upper
    pos = integrate(law.sf, 0.0, math.inf, cfg, points=law.breakpoints(0.0)).value
    neg = integrate(law.cdf, left, 0.0, cfg, points=law.breakpoints(hi=0.0)).value
    return pos - neg


def check_assumption0(law, probes=64, cfg=None):
    """Probe the cdf/density model on a grid; return a list of problems found."""
    cfg = cfg or DEFAULT_CONFIG
    problems = []
    u = np.linspace(0.02, 0.98, probes)
    x = np.unique(law.quantile(np.clip(u, law.atom + 1e-9, None) if law.atom else u))
    x = x[x > law.left]
    if math.isfinite(law.left):
        below = np.array([law.left - 1.0, law.left - 1e-3])
        if np.any(law.cdf(below) != 0):
            problems.append("cdf non-zero below the left endpoint")
    c = law.cdf(x)
    if np.any(np.diff(c) < -1e-15):
        problems.append("cdf decreasing on the probe grid")
    if np.any(c >= 1):
        problems.append("cdf reaches 1 at a finite point")
    p = law.pdf(x)
    if np.any(~(p > 0)) or np.any(~np.isfinite(p)):
        problems.append("density not strictly positive and finite")
    lo = law.left if math.isfinite(law.left) else law.integration_lower()
    for xi, ci in zip(x[::8], c[::8]):
        if xi <= lo:
            continue
        mass = law.atom + integrate(law.pdf, lo, xi, cfg, points=law.breakpoints(lo, xi)).value
        if not math.isfinite(law.left):
            mass += float(law.cdf(np.array(lo)))
        if abs(mass - ci) > 1e-7:
            problems.append(f"atom + ∫pdf != cdf at x={xi:.6g} ({mass:.10g} vs {ci:.10g})")
            break
    back = law.quantile(c)
    rel = np.abs(back - x) / np.maximum(np.abs(x), 1e-300)
    if np.any(rel > 1e-9):
        problems.append(f"quantile(cdf(x)) != x (max rel err {rel.max():.2e})")
    return problems
