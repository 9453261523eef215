"""Gamma, upper incomplete Gamma, normalized sinc and real-argument 2F1."""

import math

import numpy as np
from scipy import special as _sp

_SERIES_MAX_TERMS = 5000


class PoleError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    pass


def _is_nonpositive_int(x):
    return x <= 0 and float(x).is_integer()


def gamma_fn(x):
    """Euler Gamma. Raises PoleError at 0, -1, -2, ..."""
    x = float(x)
    if _is_nonpositive_int(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)


def rgamma(x):
    """1/Gamma(x), zero at the poles."""
    x = float(x)
    if _is_nonpositive_int(x):
        return 0.0
    return 1.0 / math.gamma(x)


def upper_incomplete_gamma(s, x):
    """Non-regularized upper incomplete Gamma, integral of t^(s-1) e^-t over [x, inf)."""
    if not s > 0:
        raise ValueError(f"upper_incomplete_gamma needs s > 0 (got {s})")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("upper_incomplete_gamma needs x >= 0")
    out = _sp.gammaincc(s, x) * math.gamma(s)
    return float(out) if out.ndim == 0 else out


def sinc_n(x):
    """Normalized sinc, sin(pi x) / (pi x)."""
    out = np.sinc(x)
    return float(out) if np.ndim(out) == 0 else out


def _series(a, b, c, z):
    # sum_n (a)_n (b)_n / ((c)_n n!) z^n, for |z| well below 1
    term = 1.0
    total = 1.0
    for n in range(_SERIES_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if term == 0.0 or abs(term) <= 1e-17 * abs(total):
            return total
    raise ConvergenceError(
        f"2F1 series did not converge in {_SERIES_MAX_TERMS} terms (a={a}, b={b}, c={c}, z={z})"
    )


def gauss_2f1(a, b, c, z):
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z <= 0.

    Direct series on [-0.5, 0], Pfaff's transformation z -> z/(z-1) on
    [-2, -0.5) and the 1/z connection formula below -2. The connection
    formula needs a - b non-integer; otherwise Pfaff is used all the way
    down, which converges slowly for large |z|.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    if _is_nonpositive_int(c):
        raise PoleError(f"2F1 undefined for c = {c}")
    if z > 0:
        raise ValueError(f"gauss_2f1 only supports z <= 0 (got {z})")
    if z == 0.0:
        return 1.0
    if z >= -0.5:
        return _series(a, b, c, z)
    if z >= -2.0 or (a - b).is_integer():
        w = z / (z - 1.0)
        return (1.0 - z) ** (-a) * _series(a, c - b, c, w)
    w = 1.0 / z
    gc = math.gamma(c)
    t1 = gc * math.gamma(b - a) * rgamma(b) * rgamma(c - a) * (-z) ** (-a)
    t2 = gc * math.gamma(a - b) * rgamma(a) * rgamma(c - b) * (-z) ** (-b)
    out = 0.0
    if t1 != 0.0:
        out += t1 * _series(a, a - c + 1.0, a - b + 1.0, w)
    if t2 != 0.0:
        out += t2 * _series(b, b - c + 1.0, b - a + 1.0, w)
    return out
