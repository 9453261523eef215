"""Frame CFAR -> bin CFAR -> interference threshold eta -> SIR threshold T_r."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .interference import SiaParams, StableParams, TsdParams, campbell_cumulant
from .inversion import InversionConfig, quantile, quantile_from_cf
from .params import NetworkParams, check


class InfiniteMeanError(ValueError):
    """T_r is undefined because the interference model has no finite mean."""


@dataclass(frozen=True)
class CfarResult:
    p_frame: float
    p_bin: float
    eta: float
    eta_prime: float
    mean_interference: float
    t_r: float


def _check_prob(p, name):
    if not 0 < p < 1:
        raise ValueError(f"{name} must lie in (0, 1), got {p}")


def frame_to_bin(p_frame, N, M):
    """Invert P_frame = 1 - (1 - P_bin)^(NM) without cancellation."""
    _check_prob(p_frame, "p_frame")
    if N * M < 1:
        raise ValueError("N*M must be at least 1")
    return -math.expm1(math.log1p(-p_frame) / (N * M))


def bin_to_frame(p_bin, N, M):
    if not 0 <= p_bin <= 1:
        raise ValueError(f"p_bin must lie in [0, 1], got {p_bin}")
    if p_bin == 1:
        return 1.0
    return -math.expm1(N * M * math.log1p(-p_bin))


def interference_threshold(p_bin, model, cfg: InversionConfig | None = None):
    """eta with P{I > eta} = p_bin under ``model``."""
    _check_prob(p_bin, "p_bin")
    if isinstance(model, SiaParams):
        if model.guard_radius == 0:
            # closed form: P = 1 - exp(-(2 pi lambda / a) Gamma(2/a) eta^(-2/a))
            a = model.alpha_c
            mass = 2 * math.pi * model.density / a * math.gamma(2 / a)
            return (mass / -math.log1p(-p_bin)) ** (a / 2)
        tol = (cfg or InversionConfig()).quantile_tol
        return quantile(model.ccdf, p_bin, model.scale, tol)
    if isinstance(model, (StableParams, TsdParams)):
        return quantile_from_cf(model, p_bin, cfg)
    raise TypeError(f"unsupported interference model {type(model).__name__}")


def resolve_cfar(p_frame, params: NetworkParams, model, r_c, cfg: InversionConfig | None = None) -> CfarResult:
    """Resolve the full threshold chain for a frame-level false-alarm target.

    The mean interference is the first Campbell cumulant at guard radius
    ``r_c``, computed once and treated as a known constant.
    """
    check(params)
    if isinstance(model, StableParams):
        raise InfiniteMeanError(
            "the untruncated interference is stable with exponent "
            f"{model.alpha:g} < 1, so E{{I}} is infinite and T_r = eta / E{{I}} is undefined; "
            "use a guarded (tsd or sia) model"
        )
    p_bin = frame_to_bin(p_frame, params.N, params.M)
    eta = interference_threshold(p_bin, model, cfg)
    mean = campbell_cumulant(1, params, r_c)
    scale = params.P_t * params.lambda_c**2 / (4 * math.pi) ** 2
    return CfarResult(
        p_frame=float(p_frame),
        p_bin=p_bin,
        eta=float(eta),
        eta_prime=float(eta * scale),
        mean_interference=mean,
        t_r=float(eta / mean),
    )


def t_r_sweep(p_frames, params, model, r_c, cfg=None):
    return np.array([resolve_cfar(p, params, model, r_c, cfg).t_r for p in p_frames])
