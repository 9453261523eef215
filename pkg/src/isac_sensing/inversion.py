"""CCDF and quantiles from a characteristic function (Gil-Pelaez inversion).

    P{X > x} = 1/2 + (1/pi) * int_0^inf Im[exp(-j w x) phi(w)] / w dw

The frequency axis is normalized by the model's ``scale`` so the same
tolerances work whether interference values are O(1) or O(1e-8).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

_EPS_LOW = 1e-12
_CLAMP_WARN = 1e-4


class InversionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class InversionConfig:
    quad_rel_tol: float = 1e-8
    omega_max: float | None = None  # normalized units; None = auto
    max_subdivisions: int = 10_000
    quantile_tol: float = 1e-10

    def __post_init__(self):
        for name in ("quad_rel_tol", "max_subdivisions", "quantile_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.omega_max is not None and not self.omega_max > 0:
            raise ValueError("omega_max must be positive")


DEFAULT_CONFIG = InversionConfig()


@dataclass(frozen=True)
class CfLaw:
    """Ad-hoc law given only by its characteristic function."""

    cf: object
    scale: float = 1.0

    def ccdf(self, x, cfg=None):
        return ccdf_from_cf(self, x, cfg)


def _quad(f, a, b, cfg, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, _ = integrate.quad(f, a, b, limit=cfg.max_subdivisions,
                                    epsabs=0.1 * cfg.quad_rel_tol, epsrel=cfg.quad_rel_tol, **kw)
        except integrate.IntegrationWarning as exc:
            raise InversionError(f"quadrature did not converge on [{a}, {b}]: {exc}") from exc
    return val


def _pick_omega_max(phi, x_n, cfg):
    """Smallest doubling point where |phi(u)| < tol * u, or None past the cap."""
    if cfg.omega_max is not None:
        return cfg.omega_max, True
    cap = 1e4 * max(1.0, 1.0 / x_n)
    u = 1.0
    while u < cap:
        if abs(phi(u)) < cfg.quad_rel_tol * u:
            return u, True
        u *= 2.0
    return cap, False


def gil_pelaez(model, x, cfg: InversionConfig | None = None) -> float:
    """Raw (unclamped) Gil-Pelaez CCDF value at x > 0."""
    cfg = cfg or DEFAULT_CONFIG
    if not x > 0:
        raise ValueError("x must be positive")
    s = float(model.scale)
    x_n = x / s

    def phi(u):
        return complex(model.cf(u / s))

    def integrand(u):
        return (np.exp(-1j * u * x_n) * phi(u)).imag / u

    u_max, decayed = _pick_omega_max(phi, x_n, cfg)
    # split at oscillation periods so each quad panel sees a bounded number of cycles
    period = 2 * math.pi / x_n
    # geometric panels near 0 absorb the u^(alpha-1) singularity of heavy-tailed laws
    step = 50 * period
    edges = [e for e in np.geomspace(_EPS_LOW, min(1.0, step, u_max), 13)]
    while edges[-1] + step < u_max:
        edges.append(edges[-1] + step)
    edges.append(u_max)
    total = sum(_quad(integrand, lo, hi, cfg) for lo, hi in zip(edges[:-1], edges[1:]))
    if not decayed:
        # Fourier tail: Im[e^{-jux} phi] = Im(phi) cos(ux) - Re(phi) sin(ux)
        total += _quad(lambda u: phi(u).imag / u, u_max, np.inf, cfg, weight="cos", wvar=x_n)
        total -= _quad(lambda u: phi(u).real / u, u_max, np.inf, cfg, weight="sin", wvar=x_n)
    return 0.5 + total / math.pi


def ccdf_from_cf(model, x, cfg: InversionConfig | None = None):
    """P{X > x} clamped to [0, 1] and, for arrays, made non-increasing in x.

    Warns when the raw value overshoots [0, 1] by more than 1e-4.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(xs)
    for i, xi in enumerate(xs):
        raw = gil_pelaez(model, xi, cfg)
        if raw < -_CLAMP_WARN or raw > 1 + _CLAMP_WARN:
            warnings.warn(f"Gil-Pelaez value {raw:.3g} at x={xi:.3g} outside [0, 1]", RuntimeWarning)
        out[i] = min(1.0, max(0.0, raw))
    if out.size > 1:
        # quadrature jitter (~ quad_rel_tol) can break monotonicity deep in the tail;
        # replace each value by the running minimum along increasing x
        order = np.argsort(xs, kind="stable")
        mono = np.minimum.accumulate(out[order])
        if np.max(out[order] - mono) > _CLAMP_WARN:
            warnings.warn("Gil-Pelaez CCDF is not monotone beyond tolerance", RuntimeWarning)
        out[order] = mono
    return float(out[0]) if np.ndim(x) == 0 else out


def quantile(ccdf, p, scale, rel_tol=1e-10):
    """x with ccdf(x) = p for a non-increasing ccdf, bracket grown geometrically from scale."""
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")

    def f(x):
        return float(ccdf(x)) - p

    lo = hi = float(scale)
    for _ in range(200):
        if f(hi) <= 0:
            break
        lo, hi = hi, hi * 4.0
    else:
        raise InversionError(f"could not bracket quantile p={p} from above")
    for _ in range(200):
        if f(lo) >= 0:
            break
        hi, lo = lo, lo / 4.0
    else:
        raise InversionError(f"could not bracket quantile p={p} from below")
    if f(lo) == 0:
        return lo
    return optimize.brentq(f, lo, hi, xtol=rel_tol * lo * 1e-3, rtol=max(rel_tol, 4 * np.finfo(float).eps))


def quantile_from_cf(model, p, cfg: InversionConfig | None = None):
    cfg = cfg or DEFAULT_CONFIG
    return quantile(lambda x: ccdf_from_cf(model, x, cfg), p, model.scale, cfg.quantile_tol)
