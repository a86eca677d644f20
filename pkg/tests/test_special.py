import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinfrechet import gamma, ln_gamma, upper_incomplete_gamma
from steinfrechet.errors import DivergenceError, DomainError, PoleError
from steinfrechet.special import log_gamma_ratio

# mpmath.gammainc(s, x) at 40 digits
FROZEN = [
    (0.5, 0.2, 0.93424138310224966),
    (0.5, 3.0, 0.025356509323463443),
    (2.5, 1.0, 1.1288027918891023),
    (2.5, 10.0, 0.0016613173117794601),
    (-0.5, 0.3, 1.1503670473551643),
    (-0.5, 2.0, 0.030098757100186466),
    (0.0, 0.5, 0.55977359477616081),
    (0.0, 5.0, 0.0011482955912753258),
    (3.0, 3.5, 0.64169439772426814),
    (-1.5, 0.7, 0.33333434409661186),
]


@pytest.mark.parametrize("s,x,expected", FROZEN)
def test_upper_incomplete_gamma_frozen(s, x, expected):
    assert upper_incomplete_gamma(s, x) == pytest.approx(expected, rel=1e-13)


def test_gamma_integer_and_half():
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-15)
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert ln_gamma(101.0) == pytest.approx(math.lgamma(101.0), rel=1e-15)


def test_gamma_poles():
    with pytest.raises(PoleError):
        gamma(0.0)
    with pytest.raises(PoleError):
        gamma(-2.0)


def test_incomplete_domain():
    with pytest.raises(DomainError):
        upper_incomplete_gamma(1.0, -0.1)
    with pytest.raises(DivergenceError):
        upper_incomplete_gamma(-0.5, 0.0)
    assert upper_incomplete_gamma(2.5, 0.0) == pytest.approx(gamma(2.5), rel=1e-15)


def test_incomplete_closed_forms():
    for x in (0.1, 1.0, 7.0, 40.0):
        assert upper_incomplete_gamma(1.0, x) == pytest.approx(math.exp(-x), rel=1e-13)
        assert upper_incomplete_gamma(0.5, x) == pytest.approx(
            math.sqrt(math.pi) * math.erfc(math.sqrt(x)), rel=1e-12)


def test_log_gamma_ratio_large_arguments():
    # Γ(n+1)/Γ(n+1/2) ~ sqrt(n)
    n = 1e6
    assert math.exp(log_gamma_ratio(n + 1.0, n + 0.5)) == pytest.approx(math.sqrt(n), rel=1e-6)


@settings(max_examples=200, deadline=None)
@given(s=st.floats(-3.5, 6.0).filter(lambda v: abs(v - round(v)) > 1e-3),
       x=st.floats(0.01, 30.0))
def test_recurrence(s, x):
    lhs = upper_incomplete_gamma(s + 1.0, x)
    rhs = s * upper_incomplete_gamma(s, x) + x ** s * math.exp(-x)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-300)
