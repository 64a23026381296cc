import math

import numpy as np
import pytest
import scipy.special as sp

from dunkl_osc import DomainError, bessel_j, bessel_j_normalized, gamma

# oracle: ascending series in extended precision (mpmath), frozen values
J_1_AT_2_5 = 0.4970941024642740380108163      # truncated series, 40 digits
J_3HALF_AT_7_7 = -0.007200035921625495404122322

ORDERS = [-0.5, 0.0, 0.5, 1.0, 1.5, 2.0]


def test_half_integer_closed_forms():
    assert bessel_j(0.5, np.pi / 2) == pytest.approx(2.0 / np.pi, abs=1e-15)
    assert bessel_j(-0.5, np.pi) == pytest.approx(-np.sqrt(2.0) / np.pi, abs=1e-15)


def test_series_oracle_values():
    assert abs(bessel_j(1.0, 2.5) - J_1_AT_2_5) < 1e-10
    assert abs(bessel_j(1.5, 7.7) - J_3HALF_AT_7_7) < 1e-12


def test_series_oracle_recomputed():
    # recompute the u <= 10 oracle here: plain Horner-free summation with
    # Python floats is enough to confirm the frozen constant's provenance
    import mpmath as mp
    mp.mp.dps = 40
    s = mp.mpf(0)
    for k in range(120):
        s += (-1) ** k * (mp.mpf("2.5") / 2) ** (2 * k + 1) / (
            mp.factorial(k) * mp.gamma(k + 2))
    assert abs(float(s) - J_1_AT_2_5) < 1e-16


def test_normalized_at_zero():
    assert bessel_j_normalized(-0.5, 0.0) == pytest.approx(np.sqrt(2 / np.pi), abs=1e-14)
    assert bessel_j_normalized(0.0, 0.0) == pytest.approx(1.0, abs=1e-14)
    # 1 / (2^a Gamma(a+1)) generally
    for a in (0.7, 1.5, 2.0):
        assert bessel_j_normalized(a, 0.0) == pytest.approx(
            1.0 / (2.0 ** a * math.gamma(a + 1.0)), rel=1e-13)


def test_normalized_closed_form_half():
    x = np.linspace(0.05, 30, 301)
    ref = np.sqrt(2 / np.pi) * np.sin(x) / x
    assert np.max(np.abs(bessel_j_normalized(0.5, x) - ref)) < 1e-14


@pytest.mark.parametrize("alpha", ORDERS)
def test_normalized_consistency(alpha):
    u = np.linspace(1e-3, 60, 700)
    lhs = bessel_j_normalized(alpha, u) * u ** alpha
    rhs = bessel_j(alpha, u)
    assert np.all(np.abs(lhs - rhs) <= 1e-10 * (1.0 + np.abs(rhs)))


@pytest.mark.parametrize("alpha", ORDERS)
def test_continuity_at_zero(alpha):
    assert abs(bessel_j_normalized(alpha, 1e-8)
               - bessel_j_normalized(alpha, 0.0)) < 1e-7


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.0])
def test_recurrence(alpha):
    u = np.linspace(0.1, 50, 2000)
    lhs = bessel_j(alpha - 1.0, u) + bessel_j(alpha + 1.0, u)
    rhs = 2.0 * alpha / u * bessel_j(alpha, u)
    scale = np.abs(lhs) + np.abs(rhs) + np.sqrt(2.0 / (np.pi * u))
    assert np.max(np.abs(lhs - rhs) / scale) < 1e-9


@pytest.mark.parametrize("alpha", ORDERS + [0.25, 2.5, 3.0])
def test_against_scipy(alpha):
    u = np.concatenate([np.linspace(1e-9, 10, 801), np.geomspace(10.01, 600, 800)])
    mine = bessel_j(alpha, u)
    ref = sp.jv(alpha, u)
    small = u <= 10
    assert np.max(np.abs(mine - ref)[small]) < 1e-12
    env = np.sqrt(2.0 / (np.pi * u[~small]))
    assert np.max(np.abs(mine - ref)[~small] / env) < 1e-10


def test_negative_argument_rejected():
    with pytest.raises(DomainError):
        bessel_j(0.5, -1.0)
    with pytest.raises(DomainError):
        bessel_j_normalized(1.0, np.array([0.5, -0.1]))


def test_gamma_against_math():
    for z in np.linspace(0.5, 30, 333):
        assert abs(gamma(z) - math.gamma(z)) <= 1e-13 * math.gamma(z)


def test_order_below_minus_half_rejected():
    from dunkl_osc import ArgumentError
    with pytest.raises(ArgumentError):
        bessel_j(-0.6, 1.0)
    with pytest.raises(ArgumentError):
        bessel_j_normalized(-1.0, 1.0)
