"""Network parameters, validation and the flat ``key = value`` config format."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

SPEED_OF_LIGHT = 299_792_458.0
KM2_PER_M2 = 1e6  # BSs/km^2 -> BSs/m^2 divides by this


class ValidationError(ValueError):
    """Raised when a parameter set violates one or more model invariants."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class NetworkParams:
    """Physical and deployment constants of the air-ground network.

    All values are SI: ``lambda_B`` is in BSs per square meter, heights in
    meters, ``f_c`` in Hz and ``P_t`` in W.
    """

    lambda_B: float = 1e-5
    alpha_c: float = 4.0
    alpha_r: float = 2.0
    xi: float = 1.0
    N_t: int = 16
    N_r: int = 16
    h_B: float = 25.0
    h_U: float = 1.5
    h_T: float = 100.0
    N: int = 64
    M: int = 16
    K: int = 1
    N_c: int = 3
    P_t: float = 1.0
    f_c: float = 3.5e9

    @property
    def lambda_c(self) -> float:
        return SPEED_OF_LIGHT / self.f_c

    @property
    def delta_h_r(self) -> float:
        return self.h_T - self.h_B

    @property
    def processing_gain(self) -> int:
        return self.N * self.M

    def with_(self, **changes) -> "NetworkParams":
        return replace(self, **changes)


_INT_FIELDS = {"N_t", "N_r", "N", "M", "K", "N_c"}


def validate(params: NetworkParams) -> list[str]:
    """Return every violated invariant; an empty list means the params are usable."""
    problems = []
    for name in ("lambda_B", "xi", "P_t", "f_c", "alpha_r", "h_B", "h_U", "h_T"):
        value = getattr(params, name)
        if not (math.isfinite(value) and value > 0):
            problems.append(f"{name} must be finite and strictly positive (got {value!r})")
    if not params.alpha_c > 2:
        problems.append(f"alpha_c must exceed 2 (got {params.alpha_c!r})")
    for name in _INT_FIELDS:
        value = getattr(params, name)
        if not isinstance(value, int) or isinstance(value, bool):
            problems.append(f"{name} must be an integer (got {value!r})")
        elif name == "N_c":
            if value < 0:
                problems.append(f"N_c must be non-negative (got {value})")
        elif value < 1:
            problems.append(f"{name} must be a positive integer (got {value})")
    if not params.h_T > params.h_B:
        problems.append(f"h_T > h_B required (got h_T={params.h_T}, h_B={params.h_B})")
    if not params.h_B > params.h_U:
        problems.append(f"h_B > h_U required (got h_B={params.h_B}, h_U={params.h_U})")
    return problems


def check(params: NetworkParams) -> NetworkParams:
    problems = validate(params)
    if problems:
        raise ValidationError(problems)
    return params


def sir_constant(params: NetworkParams) -> float:
    """Deterministic numerator constant xi * N_r / (4 pi) of the sensing SIR."""
    return params.xi * params.N_r / (4 * math.pi)


def link_distance(r_1, params: NetworkParams):
    """3D BS-to-target distance for horizontal distance ``r_1`` (works on arrays)."""
    return (r_1 * r_1 + params.delta_h_r**2) ** 0.5


# -- config files -----------------------------------------------------------

def _coerce(name: str, raw: str):
    if name in _INT_FIELDS:
        return int(raw)
    return float(raw)


def parse_config_text(text: str) -> dict[str, str]:
    """Parse flat ``key = value`` lines. ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError([f"line {lineno}: expected 'key = value', got {line!r}"])
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ValidationError([f"line {lineno}: empty key"])
        out[key] = value
    return out


def load_config(path) -> dict[str, str]:
    return parse_config_text(Path(path).read_text(encoding="utf-8"))


def params_from_mapping(raw: dict[str, str], base: NetworkParams | None = None) -> NetworkParams:
    """Build params from string values; keys outside NetworkParams must be namespaced.

    ``lambda_B`` in a config file is in SI (BSs/m^2); ``lambda_B_km2`` is
    accepted as the km^2 spelling and converted.
    """
    base = base or NetworkParams()
    known = {f.name for f in fields(NetworkParams)}
    changes = {}
    problems = []
    for key, value in raw.items():
        if key.startswith(("mc.", "inversion.")):
            continue
        try:
            if key == "lambda_B_km2":
                changes["lambda_B"] = float(value) / KM2_PER_M2
            elif key in known:
                changes[key] = _coerce(key, value)
            else:
                problems.append(f"unknown config key {key!r}")
        except ValueError:
            problems.append(f"{key}: cannot parse {value!r}")
    if problems:
        raise ValidationError(problems)
    return check(replace(base, **changes))


def namespaced(raw: dict[str, str], prefix: str) -> dict[str, str]:
    return {k[len(prefix) + 1:]: v for k, v in raw.items() if k.startswith(prefix + ".")}


def params_to_text(params: NetworkParams) -> str:
    lines = [f"{k} = {v!r}" for k, v in asdict(params).items()]
    lines.append(f"# lambda_B in BSs/km^2: {params.lambda_B * KM2_PER_M2!r}")
    return "\n".join(lines) + "\n"
