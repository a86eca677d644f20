import math

import numpy as np
import pytest

from steinfrechet import (FrechetLaw, catalog, exact_distances, frechet_bounds, kolmogorov, maxima,
                          monte_carlo_distances, total_variation, wasserstein)
from steinfrechet.errors import InfiniteMeanError, ParameterError

PHI1, PHI2, PHI3 = FrechetLaw(1.0), FrechetLaw(2.0), FrechetLaw(3.0)
# mpmath, 30 digits
KOL_PHI1_PHI2 = 0.18185906260258541
TV_PHI1_PHI2 = 0.30902372993595840
WASS_PHI2_PHI3 = 0.46958363648610906
KOL_PARETO10 = 0.028000080455330762
WASS_PARETO10 = 0.022285405080064158


@pytest.fixture(scope="module")
def pareto_max10():
    return maxima(catalog("pareto", alpha=2.0), 10)


def test_identical_laws_are_zero():
    assert kolmogorov(PHI2, PHI2) == 0.0
    assert total_variation(PHI2, PHI2) == pytest.approx(0.0, abs=1e-12)
    assert wasserstein(PHI2, PHI2) == pytest.approx(0.0, abs=1e-12)


def test_frechet_pair_frozen():
    assert kolmogorov(PHI1, PHI2) == pytest.approx(KOL_PHI1_PHI2, abs=1e-14)
    assert total_variation(PHI1, PHI2) == pytest.approx(TV_PHI1_PHI2, abs=1e-12)
    assert wasserstein(PHI2, PHI3) == pytest.approx(WASS_PHI2_PHI3, abs=1e-11)


def test_kolmogorov_brute_grid():
    x = np.geomspace(1e-2, 1e3, 10**6)
    brute = np.max(np.abs(np.exp(-1 / x) - np.exp(-x ** -2.0)))
    assert kolmogorov(PHI1, PHI2) >= brute - 1e-15
    assert kolmogorov(PHI1, PHI2) - brute < 1e-10


def test_structural_order():
    tv = total_variation(PHI1, PHI2)
    assert kolmogorov(PHI1, PHI2) <= tv <= 2 * tv


def test_pareto_frozen(pareto_max10):
    rep = exact_distances(PHI2, pareto_max10)
    assert rep.kol == pytest.approx(KOL_PARETO10, abs=1e-13)
    assert rep.tv == pytest.approx(KOL_PARETO10, abs=1e-11)
    assert rep.wass == pytest.approx(WASS_PARETO10, abs=1e-11)


def test_wasserstein_below_bound(pareto_max10):
    b = frechet_bounds(catalog("pareto", alpha=2.0), 10)
    assert wasserstein(PHI2, pareto_max10) <= b.wass_bound


def test_wasserstein_infinite_mean():
    with pytest.raises(InfiniteMeanError):
        wasserstein(PHI1, PHI2)


def test_atom_counts_in_tv_and_kol():
    Q = maxima(catalog("loglog_corrected", alpha=1.0), 20)
    P = FrechetLaw(1.0)
    assert total_variation(P, Q) >= Q.atom / 2
    assert kolmogorov(P, Q) >= abs(Q.atom - float(P.cdf(np.array(Q.left))))


def test_monte_carlo_pareto():
    rep = monte_carlo_distances(catalog("pareto", alpha=2.0), 10, samples=10**5, seed=3)
    assert abs(rep.kol - KOL_PARETO10) <= 3 * rep.kol_err
    assert abs(rep.wass - WASS_PARETO10) <= 3 * rep.wass_err
    assert rep.samples == 10**5 and rep.method == "monte_carlo"


def test_monte_carlo_identity():
    rep = monte_carlo_distances(catalog("frechet", alpha=2.0), 1, a_n=1.0, samples=10**5, seed=0)
    assert rep.kol <= 3 * rep.kol_err
    assert rep.wass == pytest.approx(0.0, abs=1e-12)


def test_monte_carlo_seeded():
    a = monte_carlo_distances(catalog("pareto"), 10, samples=10**4, seed=7)
    b = monte_carlo_distances(catalog("pareto"), 10, samples=10**4, seed=7)
    assert a == b


def test_monte_carlo_wass_frechet_pair():
    # quantile coupling of Φ_2 and Φ_3 with 10^6 uniforms, independent of the package
    v = np.random.default_rng(11).random(10**6)
    e = -np.log(v)
    gap = np.abs(e ** -0.5 - e ** (-1 / 3))
    se = gap.std(ddof=1) / math.sqrt(len(v))
    assert abs(wasserstein(PHI2, PHI3) - gap.mean()) <= 3 * se


def test_monte_carlo_rejects_few_samples():
    with pytest.raises(ParameterError):
        monte_carlo_distances(catalog("pareto"), 10, samples=0)
