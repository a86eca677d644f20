"""Acceptance gate: one PASS/FAIL line per criterion, printed in the terminal summary."""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from steinfrechet import (FrechetLaw, acceptance_catalog, catalog, delta, delta_w, estimate_index,
                          exact_distances, find_sign_changes, fit_rate, frechet_bounds, frechet_delta,
                          frechet_roles, frechet_vs_frechet, kolmogorov, monte_carlo_distances,
                          pareto_delta, pareto_delta_w, scaling_sequence, verify_proposition1,
                          wasserstein)
from steinfrechet.discrepancy import cauchy_ratio
from steinfrechet.distributions import TABLE1_ROWS

pytestmark = pytest.mark.acceptance

LAWS = acceptance_catalog()


class Gate:
    """Collects sub-checks of one criterion and reports them as a single line."""

    def __init__(self, number, title, budget):
        self.number = number
        self.title = title
        self.budget = budget
        self.failures = []
        self.notes = []
        self.start = time.perf_counter()

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def note(self, what):
        self.notes.append(what)

    def finish(self):
        elapsed = time.perf_counter() - self.start
        self.check(elapsed < self.budget, f"runtime {elapsed:.1f}s >= {self.budget:g}s")
        status = "PASS" if not self.failures else "FAIL"
        detail = "; ".join(self.failures + self.notes)
        line = f"[{self.number:02d}] {status} {self.title} ({elapsed:.2f}s)"
        if detail:
            line += f": {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert not self.failures, line


def test_01_pareto_exactness():
    g = Gate(1, "Pareto discrepancy equals 1/(n+1)", 9 * 1.0)
    for alpha in (1.5, 2.0, 3.0):
        for n in (9, 99, 999):
            t0 = time.perf_counter()
            d = frechet_delta(catalog("pareto", alpha=alpha), n).value
            g.check(time.perf_counter() - t0 < 1.0, f"alpha={alpha} n={n} slower than 1s")
            g.check(abs(d - pareto_delta(n)) <= 1e-8, f"alpha={alpha} n={n}: {d:.12g}")
    g.finish()


def test_02_pareto_weighted():
    g = Gate(2, "Pareto weighted discrepancy, log-gamma form and Gamma(2-1/alpha)/n", 2.0)
    F = catalog("pareto", alpha=2.0)
    for n in (10, 100):
        q = frechet_delta(F, n, weighted=True).value
        cf = pareto_delta_w(2.0, n)
        g.check(abs(q - cf) <= 1e-7 * cf, f"n={n}: {q:.12g} vs {cf:.12g}")
    scaled = 1000 * frechet_delta(F, 1000, weighted=True).value
    target = math.gamma(1.5)
    g.check(abs(scaled - target) <= 0.1 * target, f"n*delta_w={scaled:.6g} vs {target:.6g}")
    g.note(f"n*delta_w(1e3)={scaled:.6f}")
    g.finish()


def test_03_frechet_pairs():
    g = Gate(3, "Frechet-vs-Frechet closed forms match quadrature", 5.0)
    for a, b in ((1.0, 2.0), (2.0, 3.0), (2.0, 5.0)):
        cf = frechet_vs_frechet(a, b)
        q = delta(FrechetLaw(b), FrechetLaw(a)).value
        g.check(abs(cf - q) <= 1e-7, f"delta({a:g},{b:g}): {cf:.12g} vs {q:.12g}")
    for a, b in ((2.0, 3.0), (3.0, 5.0)):
        cf = frechet_vs_frechet(a, b, weighted=True)
        q = delta_w(FrechetLaw(b), FrechetLaw(a)).value
        g.check(abs(cf - q) <= 1e-7, f"delta_w({a:g},{b:g}): {cf:.12g} vs {q:.12g}")
    g.finish()


def test_04_cauchy_constants():
    g = Gate(4, "Cauchy discrepancy below 1.832/n + 1.965/n^2, n*delta converges, z0", 10.0)
    F = catalog("cauchy")
    scaled = {}
    for n in (10, 100, 1000, 10_000):
        d = frechet_delta(F, n)
        bound = 1.832 / n + 1.965 / n ** 2 + d.error_estimate
        g.check(d.value <= bound, f"n={n}: {d.value:.6g} > {bound:.6g}")
        scaled[n] = n * d.value
        if d.kinks:
            # a kink at x maps to u = 1/(n x)
            for k in d.kinks:
                u = 1.0 / (n * k)
                g.check(0.105 <= u <= 0.113, f"n={n}: kink maps to u={u:.6g}")
    change = abs(scaled[10_000] / scaled[1000] - 1.0)
    g.check(change < 0.02, f"n*delta changes by {change:.3%} from 1e3 to 1e4")
    roots = find_sign_changes(lambda u: 1.0 - cauchy_ratio(u), 0.0, math.inf)
    g.check(len(roots) == 1 and 0.105 <= roots[0] <= 0.113, f"z0 roots {roots}")
    g.note(f"z0={roots[0]:.6f}" if roots else "no z0")
    g.note(f"n*delta: {', '.join(f'{v:.4f}' for v in scaled.values())}")
    g.finish()


def test_05_burr_scaling():
    g = Gate(5, "Burr XII discrepancy slope -1/tau and plateau", 60.0)
    ns = [int(round(v)) for v in np.geomspace(1e3, 1e5, 5)]
    for tau in (3.0, 3.5, 4.0):
        F = catalog("burr12", alpha=2.0, tau=tau)
        series = [(n, frechet_delta(F, n).value) for n in ns]
        slope = fit_rate(series).slope
        g.check(abs(slope + 1.0 / tau) <= 0.05, f"tau={tau:g}: slope {slope:.4f} vs {-1 / tau:.4f}")
        s4 = 1e4 ** (1 / tau) * dict(series)[10_000]
        s5 = 1e5 ** (1 / tau) * dict(series)[100_000]
        g.check(abs(s5 / s4 - 1.0) < 0.1, f"tau={tau:g}: n^(1/tau)*delta {s4:.4f} -> {s5:.4f}")
        g.note(f"tau={tau:g} slope={slope:.4f}")
    g.finish()


def test_06_kol_tv_dominance():
    g = Gate(6, "exact Kol and TV below the discrepancy bounds", 60.0)
    for name, F in LAWS.items():
        for n in (10, 100):
            P, Q = frechet_roles(F, n)
            b = frechet_bounds(F, n, weighted=False)
            o = exact_distances(P, Q, with_wass=False)
            g.check(o.kol <= b.kol_bound + b.kol_err + o.kol_err,
                    f"{name} n={n}: kol {o.kol:.6g} > {b.kol_bound:.6g}")
            g.check(o.tv <= b.tv_bound + b.tv_err + o.tv_err,
                    f"{name} n={n}: tv {o.tv:.6g} > {b.tv_bound:.6g}")
    g.finish()


def test_07_wasserstein_dominance():
    g = Gate(7, "exact Wasserstein below 2*mu*delta + 3*delta_w", 30.0)
    for name, params in (("pareto", {"alpha": 2.0}), ("loglogistic", {"alpha": 2.0}),
                         ("burr12", {"alpha": 2.0, "tau": 3.0})):
        F = catalog(name, **params)
        for n in (10, 100):
            P, Q = frechet_roles(F, n)
            b = frechet_bounds(F, n)
            w, werr = wasserstein(P, Q, return_error=True)
            g.check(b.wass_bound is not None, f"{name} n={n}: no bound ({b.wass_note})")
            if b.wass_bound is not None:
                g.check(w <= b.wass_bound + b.wass_err + werr,
                        f"{name} n={n}: wass {w:.6g} > {b.wass_bound:.6g}")
    g.finish()


def test_08_pareto_limit():
    g = Gate(8, "Pareto n*Kol at n=1e4 near 2e^-2", 10.0)
    n = 10_000
    P, Q = frechet_roles(catalog("pareto", alpha=2.0), n)
    o = exact_distances(P, Q, with_wass=False)
    target = 2.0 * math.exp(-2.0)
    g.check(abs(n * o.kol - target) <= 0.05 * target, f"n*kol={n * o.kol:.6g}")
    g.note(f"n*kol={n * o.kol:.8f}, n*tv={n * o.tv:.8f} (recorded), 2e^-2={target:.8f}")
    g.finish()


def test_09_stein_solution_bounds():
    g = Gate(9, "Stein solution bounds on 1e3-point grids, identity residual", 20.0)
    for P in (FrechetLaw(2.0), catalog("pareto", alpha=3.0)):
        rep = verify_proposition1(P, grid_size=1000, n_halfline=20)
        g.check(rep.violations == 0, f"{P.name}: {rep.violations} violations")
        g.check(rep.stein_residual <= 1e-8, f"{P.name}: residual {rep.stein_residual:.3g}")
        g.note(f"{P.name}: residual={rep.stein_residual:.2g}, "
               f"slack set={rep.max_slack('set'):.2g} halfline={rep.max_slack('halfline'):.2g} "
               f"lipschitz={rep.max_slack('lipschitz'):.2g}")
    g.finish()


def test_10_karamata():
    g = Gate(10, "reverse-hazard index at t=1e4 and n(1-F(a_n)) at n=1e4", 10.0)
    x_grid = np.geomspace(1e-2, 1e2, 41)
    for name, F in LAWS.items():
        alpha = F.tail_index
        idx = estimate_index(F.reverse_hazard, [1e4], x_grid)
        target = -alpha - 1.0
        g.check(abs(idx - target) <= 0.02 * abs(target), f"{name}: index {idx:.4f} vs {target:g}")
        rate = getattr(F, "rate", None)
        if rate is not None and rate(10_000) == 10_000:
            n = 10_000
            v = n * float(F.sf(np.array(scaling_sequence(F, n))))
            g.check(abs(v - 1.0) <= 0.01, f"{name}: n(1-F(a_n))={v:.4f}")
    g.finish()


def test_11_monotone_discrepancy():
    g = Gate(11, "discrepancy strictly decreasing over n=1e2,1e3,1e4", 60.0)
    for name in TABLE1_ROWS:
        F = LAWS[name]
        seq = [frechet_delta(F, n).value for n in (100, 1000, 10_000)]
        g.check(seq[0] > seq[1] > seq[2], f"{name}: {', '.join(f'{v:.4g}' for v in seq)}")
    g.finish()


def test_12_monte_carlo_consistency():
    g = Gate(12, "exact Kol and Wass within 3 bands of Monte Carlo (1e6 samples)", 20.0)
    F = catalog("pareto", alpha=2.0)
    P, Q = frechet_roles(F, 10)
    kol = kolmogorov(P, Q)
    wass = wasserstein(P, Q)
    mc = monte_carlo_distances(F, 10, samples=10**6, seed=1)
    g.check(abs(mc.kol - kol) <= 3 * mc.kol_err, f"kol {mc.kol:.6g} vs {kol:.6g} (band {mc.kol_err:.2g})")
    g.check(abs(mc.wass - wass) <= 3 * mc.wass_err,
            f"wass {mc.wass:.6g} vs {wass:.6g} (se {mc.wass_err:.2g})")
    g.note(f"kol mc={mc.kol:.6f} exact={kol:.6f}; wass mc={mc.wass:.6f} exact={wass:.6f}")
    g.finish()
