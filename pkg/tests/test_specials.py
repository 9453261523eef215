import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from isac_sensing.specials import (PoleError, gamma_fn, gauss_2f1, rgamma, sinc_n,
                                   upper_incomplete_gamma)


def euler_2f1(a, b, c, z):
    val, _ = integrate.quad(lambda t: (1 - z * t) ** (-a), 0, 1, weight="alg",
                            wvar=(b - 1, c - b - 1), epsabs=0, epsrel=1e-13, limit=200)
    return math.gamma(c) / (math.gamma(b) * math.gamma(c - b)) * val


@pytest.mark.parametrize("x, expected", [
    (0.5, math.sqrt(math.pi)),
    (5.0, 24.0),
    (-0.5, -2 * math.sqrt(math.pi)),
])
def test_gamma_values(x, expected):
    assert gamma_fn(x) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma_fn(x)
    assert rgamma(x) == 0.0


@given(st.floats(0.05, 30))
def test_gamma_recurrence(x):
    assert gamma_fn(x + 1) == pytest.approx(x * gamma_fn(x), rel=1e-10)


@pytest.mark.parametrize("s, x, expected", [
    (1.0, 0.0, 1.0),
    (1.0, 2.0, math.exp(-2)),
    (0.5, 0.0, math.sqrt(math.pi)),
])
def test_upper_incomplete_gamma(s, x, expected):
    assert upper_incomplete_gamma(s, x) == pytest.approx(expected, rel=1e-12)


def test_upper_incomplete_gamma_decreasing():
    xs = np.linspace(0, 10, 50)
    vals = [upper_incomplete_gamma(0.5, x) for x in xs]
    assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("x, expected", [(0.0, 1.0), (0.25, 0.9003163), (1.0, 0.0)])
def test_sinc(x, expected):
    assert sinc_n(x) == pytest.approx(expected, abs=1e-7)


@pytest.mark.parametrize("abc", [(1.0, 0.5, 1.5), (2.0, 0.3, 4.1), (0.5, 0.5, 1.0)])
def test_2f1_at_zero(abc):
    assert gauss_2f1(*abc, 0.0) == 1.0


@pytest.mark.parametrize("z, expected", [
    (-1.0, math.pi / 4),
    (-100.0, math.atan(10) / 10),
])
def test_2f1_arctan_identity(z, expected):
    assert gauss_2f1(1.0, 0.5, 1.5, z) == pytest.approx(expected, rel=1e-12)
    assert gauss_2f1(1.0, 0.5, 1.5, z) == pytest.approx(euler_2f1(1.0, 0.5, 1.5, z), rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.floats(2.1, 8.0), st.floats(-1e4, 0.0))
def test_2f1_matches_euler_integral(alpha, z):
    args = (1.0, 1 - 2 / alpha, 2 - 2 / alpha, z)
    assert gauss_2f1(*args) == pytest.approx(euler_2f1(*args), rel=1e-8)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 3), st.floats(0.1, 3), st.floats(-50, 0))
def test_2f1_symmetric_in_a_b(a, b, z):
    c = a + b + 0.7
    assert gauss_2f1(a, b, c, z) == pytest.approx(gauss_2f1(b, a, c, z), rel=1e-9)


def test_2f1_rejects_positive_argument():
    with pytest.raises(ValueError):
        gauss_2f1(1.0, 0.5, 1.5, 0.5)
