import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wddt import normal_cdf, normal_quantile, two_sided_p_value

mpmath.mp.dps = 40


def _reference_cdf(x):
    # 40-digit quadrature of the density
    dens = lambda t: mpmath.exp(-t * t / 2) / mpmath.sqrt(2 * mpmath.pi)
    return float(mpmath.mpf("0.5") + mpmath.quad(dens, [0, x]))


def _bisect_quantile(p):
    lo, hi = -40.0, 40.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if normal_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_cdf_center():
    assert normal_cdf(0.0) == 0.5


def test_cdf_975():
    assert normal_cdf(1.959964) == pytest.approx(0.975, abs=1e-6)


@pytest.mark.parametrize("x", np.linspace(-8, 8, 33))
def test_cdf_accuracy_against_quadrature(x):
    assert abs(normal_cdf(x) - _reference_cdf(x)) <= 1e-10


def test_cdf_monotone():
    xs = np.linspace(-8, 8, 20001)
    vals = [normal_cdf(x) for x in xs]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


@given(st.floats(-30, 30))
def test_cdf_reflection(x):
    assert normal_cdf(-x) == pytest.approx(1 - normal_cdf(x), abs=1e-15)


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_cdf_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        normal_cdf(bad)


def test_quantile_values():
    assert normal_quantile(0.5) == 0.0
    assert normal_quantile(0.975) == pytest.approx(1.959964, abs=1e-5)
    assert normal_quantile(0.975) == pytest.approx(_bisect_quantile(0.975), abs=1e-12)


@pytest.mark.parametrize("p", [k / 100 for k in range(1, 100)])
def test_quantile_roundtrip(p):
    x = normal_quantile(p)
    assert abs(normal_cdf(x) - p) <= 1e-10
    assert normal_cdf(x) == pytest.approx(p, abs=1e-9)


@pytest.mark.parametrize("p", [1e-12, 1e-6, 0.001, 0.999, 1 - 1e-9])
def test_quantile_tails(p):
    assert abs(normal_cdf(normal_quantile(p)) - p) <= 1e-10


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.1, 1.5])
def test_quantile_rejects(bad):
    with pytest.raises(ValueError):
        normal_quantile(bad)


@given(st.floats(-8, 8))
def test_two_sided_p_value(z):
    p = two_sided_p_value(z)
    assert 0.0 <= p <= 1.0
    assert p == pytest.approx(2 * (1 - normal_cdf(abs(z))), abs=1e-15)
