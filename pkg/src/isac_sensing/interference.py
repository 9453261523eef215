"""Analytical laws for the aggregated sensing interference.

Three models share one small interface (``cf`` where it exists, ``ccdf`` and
a characteristic ``scale`` used to normalize numerical inversion):

* ``StableParams``: untruncated interference, a right-skewed stable law.
* ``TsdParams``: guarded interference approximated by a truncated-stable
  law whose first two cumulants are matched to Campbell's theorem.
* ``SiaParams``: strongest-interferer baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .params import NetworkParams, check
from .specials import gamma_fn, sinc_n, upper_incomplete_gamma


class DivergentCumulantError(ValueError):
    pass


def campbell_cumulant(n, params: NetworkParams, r_c):
    """n-th cumulant of guarded shot noise with Exp(1) marks.

    kappa(n) = 2 pi lambda_B r_c^(2 - n alpha_c) n! / (n alpha_c - 2)
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    a = params.alpha_c
    if not n * a > 2:
        raise DivergentCumulantError(f"cumulant {n} diverges for alpha_c = {a}")
    if not r_c > 0:
        raise ValueError("guard radius must be positive")
    if math.isinf(r_c):
        return 0.0
    return 2 * math.pi * params.lambda_B * r_c ** (2 - n * a) * math.factorial(n) / (n * a - 2)


@dataclass(frozen=True)
class StableParams:
    alpha: float
    beta: float
    c: float
    mu: float = 0.0

    def __post_init__(self):
        if not (0 < self.alpha <= 2 and -1 <= self.beta <= 1 and self.c > 0):
            raise ValueError(f"invalid stable parameters {self}")

    def cf(self, omega):
        return stable_cf(self, omega)

    @property
    def scale(self):
        return self.c ** (1.0 / self.alpha)

    def ccdf(self, x, cfg=None):
        from .inversion import ccdf_from_cf

        return ccdf_from_cf(self, x, cfg)


@dataclass(frozen=True)
class TsdParams:
    alpha_t: float
    c_t: float
    g_t: float

    def __post_init__(self):
        if not (0 < self.alpha_t < 1 and self.c_t > 0 and self.g_t > 0):
            raise ValueError(f"invalid truncated-stable parameters {self}")

    def cf(self, omega):
        return tsd_cf(self, omega)

    def cumulant(self, n):
        return tsd_cumulant(self, n)

    @property
    def scale(self):
        return tsd_cumulant(self, 1)

    def ccdf(self, x, cfg=None):
        from .inversion import ccdf_from_cf

        return ccdf_from_cf(self, x, cfg)


@dataclass(frozen=True)
class SiaParams:
    density: float
    alpha_c: float
    guard_radius: float = 0.0

    def __post_init__(self):
        if not (self.density > 0 and self.alpha_c > 2 and self.guard_radius >= 0):
            raise ValueError(f"invalid SIA parameters {self}")

    @property
    def scale(self):
        return self.density ** (self.alpha_c / 2)

    def ccdf(self, x, cfg=None):
        return sia_ccdf(x, self.density, self.alpha_c, self.guard_radius)


InterferenceModel = Union[StableParams, TsdParams, SiaParams]


def stable_params_noncoop(params: NetworkParams) -> StableParams:
    """Stable law of the unguarded interference: alpha = 2/alpha_c, beta = 1, mu = 0."""
    check(params)
    return StableParams(
        alpha=2.0 / params.alpha_c,
        beta=1.0,
        c=params.lambda_B * math.pi / sinc_n(1.0 / params.alpha_c),
        mu=0.0,
    )


def stable_cf(sp: StableParams, omega):
    w = np.asarray(omega, dtype=float)
    if sp.alpha != 1:
        phase = math.tan(math.pi * sp.alpha / 2)
    else:
        with np.errstate(divide="ignore"):
            phase = np.where(w == 0, 0.0, -(2 / math.pi) * np.log(np.abs(w)))
    expo = 1j * w * sp.mu - sp.c * np.abs(w) ** sp.alpha * (1 - 1j * sp.beta * np.sign(w) * phase)
    out = np.exp(expo)
    return complex(out) if out.ndim == 0 else out


def tsd_params_coop(params: NetworkParams, r_c) -> TsdParams:
    """Truncated-stable law for guarded interference by two-cumulant matching.

    The exponent is pinned to 2/alpha_c; tempering and scale follow from
    kappa_1 and kappa_2 of the guarded shot noise.
    """
    check(params)
    a = 2.0 / params.alpha_c
    k1 = campbell_cumulant(1, params, r_c)
    k2 = campbell_cumulant(2, params, r_c)
    g = k1 * (1 - a) / k2
    c = -k1 / (gamma_fn(-a) * a * g ** (a - 1))
    return TsdParams(alpha_t=a, c_t=c, g_t=g)


def tsd_log_cf(tp: TsdParams, omega):
    w = np.asarray(omega, dtype=float)
    # (g - jw)^a - g^a without cancellation at small w; principal branch, g > 0
    bracket = tp.g_t**tp.alpha_t * np.expm1(tp.alpha_t * np.log1p(-1j * w / tp.g_t))
    return tp.c_t * gamma_fn(-tp.alpha_t) * bracket


def tsd_cf(tp: TsdParams, omega):
    out = np.exp(tsd_log_cf(tp, omega))
    return complex(out) if out.ndim == 0 else out


def tsd_cumulant(tp: TsdParams, n):
    """Closed-form n-th cumulant of the truncated-stable law."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    prod = 1.0
    for i in range(n):
        prod *= tp.alpha_t - i
    return (-1) ** n * tp.c_t * gamma_fn(-tp.alpha_t) * tp.g_t ** (tp.alpha_t - n) * prod


def sia_ccdf(eta, density, alpha_c, r_c=0.0):
    """P{max_i w_i^-alpha_c g_i > eta} over a PPP outside radius r_c, Exp(1) marks.

    1 - exp(-(2 pi lambda / alpha_c) eta^(-2/alpha_c) Gamma(2/alpha_c, eta r_c^alpha_c))
    """
    eta = np.asarray(eta, dtype=float)
    delta = 2.0 / alpha_c
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        inc = upper_incomplete_gamma(delta, eta * r_c**alpha_c)
        mean_count = (2 * math.pi * density / alpha_c) * eta ** (-delta) * inc
    out = -np.expm1(-mean_count)
    out = np.where(eta <= 0, 1.0, np.where(np.isinf(eta), 0.0, out))
    return float(out) if out.ndim == 0 else out


def build_model(kind: str, params: NetworkParams, r_c) -> InterferenceModel:
    """Model factory keyed by ``stable``, ``tsd`` or ``sia``."""
    if kind == "stable":
        return stable_params_noncoop(params)
    if kind == "tsd":
        return tsd_params_coop(params, r_c)
    if kind == "sia":
        return SiaParams(params.lambda_B, params.alpha_c, r_c)
    raise ValueError(f"unknown model {kind!r}")


def finite_window_cf(params: NetworkParams, omega, r_f):
    """Exact CF of the unguarded interference from BSs within distance r_f.

    phi(w) = exp(2 pi lambda int_0^r_f  j w x / (x^alpha_c - j w) dx), the
    Poisson-averaged finite-disk CF; it tends to the stable CF as r_f grows.
    """
    from scipy import integrate

    a, lam = params.alpha_c, params.lambda_B
    rho_f = r_f * math.sqrt(lam)
    out = []
    for w in np.atleast_1d(np.asarray(omega, dtype=float)):
        wn = w * lam ** (a / 2)

        def f(x, part):
            v = 1j * wn * x / (x**a - 1j * wn)
            return v.real if part == 0 else v.imag

        knot = min(rho_f, max(abs(wn), 1e-300) ** (1 / a))
        edges = [0.0, knot]
        if rho_f > knot:
            edges += list(np.geomspace(knot, rho_f, 2 + 4 * int(math.log10(rho_f / knot) + 1))[1:])
        acc = 0j
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi > lo:
                re, _ = integrate.quad(f, lo, hi, args=(0,), limit=200, epsabs=0.0, epsrel=1e-12)
                im, _ = integrate.quad(f, lo, hi, args=(1,), limit=200, epsabs=0.0, epsrel=1e-12)
                acc += re + 1j * im
        out.append(np.exp(2 * math.pi * acc))
    out = np.array(out)
    return complex(out[0]) if np.ndim(omega) == 0 else out
