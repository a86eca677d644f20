import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinfrechet import (CATALOG_NAMES, FrechetLaw, acceptance_catalog, catalog, check_assumption0,
                          maxima, mean, scaling_sequence)
from steinfrechet.distributions import parse_params
from steinfrechet.errors import InfiniteMeanError, InversionError, ParameterError

LAWS = acceptance_catalog()


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_assumption0(name):
    assert check_assumption0(LAWS[name]) == []


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_cdf_sf_complement(name):
    law = LAWS[name]
    u = np.linspace(0.05, 0.95, 19)
    x = law.quantile(np.maximum(u, law.atom + 1e-6))
    assert np.allclose(law.cdf(x) + law.sf(x), 1.0, atol=1e-14)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_reverse_hazard_is_pdf_over_cdf(name):
    law = LAWS[name]
    x = law.quantile(np.linspace(max(0.1, law.atom + 0.01), 0.9, 9))
    assert law.reverse_hazard(x) == pytest.approx(law.pdf(x) / law.cdf(x), rel=1e-12)


def test_pareto_closed_forms(pareto2):
    x = np.array([1.0, 2.0, 10.0])
    assert pareto2.cdf(x) == pytest.approx(1 - x ** -2.0)
    assert pareto2.cdf(np.array(0.5)) == 0.0
    assert mean(pareto2) == pytest.approx(2.0)


def test_frechet_moments():
    law = FrechetLaw(3.0)
    assert mean(law) == pytest.approx(math.gamma(1 - 1 / 3), rel=1e-15)
    assert law.cdf(np.array(1.0)) == pytest.approx(math.exp(-1.0))
    with pytest.raises(InfiniteMeanError):
        mean(FrechetLaw(1.0))


@pytest.mark.parametrize("name,n,expected", [
    ("pareto", 100, 10.0),
    ("cauchy", 100, 100 / math.pi),
    ("gpd", 100, 10.0),
    ("two_term_pareto", 100, 50.0),
    ("log_corrected", 100, 100 / math.log(100)),
])
def test_closed_form_scales(name, n, expected):
    assert scaling_sequence(LAWS[name], n) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("name", ["pareto", "cauchy", "loglogistic", "burr12", "gpd"])
def test_numeric_scale_inverts_sf(name):
    law = LAWS[name]
    a = scaling_sequence(law, 1000, numeric=True)
    assert 1000 * law.sf(np.array(a)) == pytest.approx(1.0, rel=1e-10)


def test_cauchy_numeric_scale_is_exact_quantile():
    a = scaling_sequence(LAWS["cauchy"], 1000, numeric=True)
    assert a == pytest.approx(math.tan(math.pi * (0.5 - 1e-3)), rel=1e-10)


def test_loglog_atom_blocks_numeric_scale():
    law = catalog("loglog_corrected", alpha=1.0)
    assert law.atom == pytest.approx(1 - math.exp(-math.e))
    with pytest.raises(InversionError):
        scaling_sequence(law, 5, numeric=True)


def test_maxima_law(pareto2):
    Fn = maxima(pareto2, 10)
    x = np.array([0.5, 1.0, 3.0])
    expected = np.where(x * math.sqrt(10) > 1, (1 - (x * math.sqrt(10)) ** -2.0) ** 10, 0.0)
    assert Fn.cdf(x) == pytest.approx(expected, rel=1e-13)
    assert Fn.left == pytest.approx(1 / math.sqrt(10))
    assert Fn.atom == 0.0


def test_maxima_atom_is_power():
    law = catalog("loglog_corrected", alpha=1.0)
    assert maxima(law, 20).atom == pytest.approx(law.atom ** 20, rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(u=st.floats(1e-9, 1 - 1e-9), n=st.integers(1, 10**5))
def test_maxima_quantile_roundtrip(u, n):
    Fn = maxima(catalog("burr12", alpha=2.0, tau=3.0), n, a_n=float(n) ** (1 / 6))
    x = Fn.quantile(np.array(u))
    assert float(Fn.cdf(x)) == pytest.approx(u, rel=1e-8, abs=1e-12)


def test_two_term_conventions():
    with pytest.raises(ParameterError):
        catalog("two_term_pareto")
    halved = catalog("two_term_pareto", convention="halved")
    assert float(halved.cdf(np.array(1.0))) == pytest.approx(0.0, abs=1e-15)
    root = catalog("two_term_pareto", convention="root")
    assert float(root.cdf(np.array(root.left))) == pytest.approx(0.0, abs=1e-12)
    assert root.left > 1.0


def test_parameter_validation():
    with pytest.raises(ParameterError):
        catalog("nope")
    with pytest.raises(ParameterError):
        catalog("pareto", alpha=-1.0)
    with pytest.raises(ParameterError):
        catalog("pareto", beta=1.0)
    with pytest.raises(ParameterError):
        scaling_sequence(LAWS["pareto"], 0)
    assert parse_params(["alpha=2", "convention=halved"]) == {"alpha": 2.0, "convention": "halved"}
    with pytest.raises(ParameterError):
        parse_params(["alpha"])
