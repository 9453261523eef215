"""Area radar detection coverage probability (ARDCP) under a CFAR constraint."""

from __future__ import annotations

import math
import warnings
from enum import Enum

from scipy import integrate

from .params import NetworkParams, check, link_distance
from .point_field import expected_kth_distance
from .specials import gauss_2f1

# Rayleigh weight exp(-u) in u = pi lambda r^2 drops below 1e-12 here
_U_MAX = 12 * math.log(10)


class CoverageMode(str, Enum):
    AS_PRINTED = "as_printed"
    LAPLACE_CORRECTED = "laplace_corrected"


def q_factor(t_r, d_1, params: NetworkParams):
    """q = 4 pi T_r d_1^(2 alpha_r) / (N M N_r xi)."""
    return (4 * math.pi * t_r * d_1 ** (2 * params.alpha_r)
            / (params.N * params.M * params.N_r * params.xi))


def _kernel(q, r_bar, a):
    # integral over r > r_bar of q r^(1-a) / (1 + q r^-a) dr, up to the 2 pi lambda factor
    return q * r_bar ** (2 - a) / (a - 2) * gauss_2f1(1.0, 1 - 2 / a, 2 - 2 / a, -q * r_bar ** (-a))


def conditional_coverage(t_r, r_1, params: NetworkParams, mode=CoverageMode.LAPLACE_CORRECTED):
    """P{NM gamma_r > T_r | R_1 = r_1} with the guard radius fixed at its mean."""
    mode = CoverageMode(mode)
    a = params.alpha_c
    r_bar = expected_kth_distance(params.lambda_B, params.N_c + 2)
    q = q_factor(t_r, link_distance(r_1, params), params)
    if mode is CoverageMode.LAPLACE_CORRECTED:
        if q == 0:
            return 1.0
        return math.exp(-2 * math.pi * params.lambda_B * _kernel(q, r_bar, a))
    raw = (2 * math.pi * r_bar ** (2 - a) / (a - 2)
           * gauss_2f1(1.0, 1 - 2 / a, 2 - 2 / a, -q * r_bar ** (-a)))
    if not 0 <= raw <= 1:
        warnings.warn(f"as-printed coverage {raw:.4g} clamped to [0, 1]", RuntimeWarning)
        raw = min(1.0, max(0.0, raw))
    return raw


def ardcp(t_r, params: NetworkParams, mode=CoverageMode.LAPLACE_CORRECTED, rel_tol=1e-7):
    """lambda_B K times the coverage averaged over the nearest-BS distance law.

    Integrated in u = pi lambda_B r_1^2, where the Rayleigh weight is e^-u.
    """
    check(params)
    mode = CoverageMode(mode)
    lam = params.lambda_B
    if t_r == 0 and mode is CoverageMode.LAPLACE_CORRECTED:
        return lam * params.K

    def integrand(u):
        return conditional_coverage(t_r, math.sqrt(u / (math.pi * lam)), params, mode) * math.exp(-u)

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, _ = integrate.quad(integrand, 0.0, _U_MAX, epsrel=rel_tol, epsabs=0.0, limit=500)
        except integrate.IntegrationWarning as exc:
            raise ArithmeticError(f"ARDCP quadrature failed: {exc}") from exc
    return lam * params.K * val
