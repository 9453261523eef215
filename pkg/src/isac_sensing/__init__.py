"""Sensing-interference and radar coverage analysis for cooperative air-ground ISAC networks.

Analytical models (stable, tempered stable and strongest-interferer laws for
the aggregated interference, the CFAR threshold chain, the area radar
detection coverage probability) next to a seeded Monte Carlo oracle.
"""

__version__ = "0.1.0"

from .params import NetworkParams, ValidationError, check, load_config, validate  # noqa: E402
from .interference import (SiaParams, StableParams, TsdParams, build_model,  # noqa: E402
                           campbell_cumulant, stable_params_noncoop, tsd_params_coop)
from .cfar import CfarResult, InfiniteMeanError, resolve_cfar  # noqa: E402
from .coverage import CoverageMode, ardcp  # noqa: E402
from .montecarlo import McConfig, McEstimate, mc_ardcp, mc_false_alarm_rate  # noqa: E402

__all__ = [
    "NetworkParams", "ValidationError", "check", "load_config", "validate",
    "SiaParams", "StableParams", "TsdParams", "build_model", "campbell_cumulant",
    "stable_params_noncoop", "tsd_params_coop",
    "CfarResult", "InfiniteMeanError", "resolve_cfar",
    "CoverageMode", "ardcp",
    "McConfig", "McEstimate", "mc_ardcp", "mc_false_alarm_rate",
]
