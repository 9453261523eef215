"""Monte Carlo oracle for the interference, false-alarm and coverage analysis.

Shot noise is simulated in units where the BS density is 1 (distances
scaled by sqrt(lambda_B)); a draw in physical units is the normalized sum
times lambda_B^(alpha_c/2).

A window of ``window_factor`` = 1e3 holds ~3e6 points per draw, so the far
field is grouped into thin geometric shells: each shell gets a Poisson
count, the Exp(1) marks of its points are summed exactly (a Gamma draw) and
weighted by the shell's area-averaged path loss. Points inside
``exact_factor`` (or twice the guard radius, whichever is larger) are drawn
one by one. ``shell_ratio=None`` disables the shells entirely.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .params import NetworkParams, check, link_distance, sir_constant
from .point_field import BudgetError, expected_kth_distance

FIXED_MEAN = "fixed_mean"
PER_REALIZATION = "per_realization"
GUARD_MODES = (FIXED_MEAN, PER_REALIZATION)


@dataclass(frozen=True)
class McConfig:
    trials: int = 1_000_000
    window_factor: float = 1e3
    guard_mode: str = FIXED_MEAN
    seed: int = 0
    chunk_size: int = 20_000
    exact_factor: float = 4.0
    shell_ratio: float | None = 1.15
    floor_factor: float = 1e-6
    max_exact_points: float = 1e7
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1000:
            raise ValueError("trials must be at least 1000")
        if self.window_factor < 10:
            raise ValueError("window_factor must be at least 10")
        if self.guard_mode not in GUARD_MODES:
            raise ValueError(f"guard_mode must be one of {GUARD_MODES}")
        if self.shell_ratio is not None and not self.shell_ratio > 1:
            raise ValueError("shell_ratio must exceed 1")

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    trials: int
    seed: int


# -- shot-noise kernel -------------------------------------------------------

def _shell_edges(start, stop, ratio):
    n = max(1, math.ceil(math.log(stop / start) / math.log(ratio)))
    return np.geomspace(start, stop, n + 1)


def _annulus_mean_loss(lo, hi, a):
    # area-averaged rho^-a over lo <= rho <= hi
    with np.errstate(invalid="ignore", divide="ignore"):
        return 2 * (lo ** (2 - a) - hi ** (2 - a)) / ((a - 2) * (hi * hi - lo * lo))


def _normalized_shot_noise(rng, n, alpha_c, rho_in, windows, cfg, atom=None):
    """Draws of sum rho^-alpha_c * Exp(1) over a unit-density PPP on [rho_in, w].

    ``windows`` is an increasing sequence of outer radii; the result has one
    row per window and the rows are nested (each larger window adds the
    annulus beyond the previous one to the same draws). ``rho_in`` may be
    per-draw; ``atom`` adds one extra interferer per draw at that radius.
    """
    windows = np.asarray(windows, dtype=float)
    rho_in = np.broadcast_to(np.asarray(rho_in, dtype=float), (n,))
    if cfg.shell_ratio is None:
        if windows.size != 1:
            raise ValueError("nested windows need shell sampling")
        rho_x = np.full(n, windows[0])
    else:
        rho_x = np.minimum(np.maximum(cfg.exact_factor, 2.0 * rho_in), windows[0])
    near_area = math.pi * np.clip(rho_x**2 - rho_in**2, 0.0, None)
    if near_area.mean() > cfg.max_exact_points:
        raise BudgetError(f"{near_area.mean():.3g} exact points per draw exceeds budget")
    counts = rng.poisson(near_area)
    owner = np.repeat(np.arange(n), counts)
    r2 = rng.uniform(np.repeat(rho_in**2, counts), np.repeat(rho_x**2, counts))
    terms = r2 ** (-alpha_c / 2) * rng.standard_exponential(owner.size)
    total = np.bincount(owner, weights=terms, minlength=n)
    if atom is not None:
        total += np.asarray(atom) ** (-alpha_c) * rng.standard_exponential(n)

    out = np.empty((windows.size, n))
    start = max(cfg.exact_factor, rho_x.min())
    for i, w in enumerate(windows):
        if cfg.shell_ratio is not None and start < w:
            edges = _shell_edges(start, w, cfg.shell_ratio)
            lo = np.maximum(edges[:-1][None, :], rho_x[:, None])
            hi = np.broadcast_to(edges[1:][None, :], lo.shape)
            area = math.pi * np.clip(hi * hi - lo * lo, 0.0, None)
            loss = np.where(area > 0, _annulus_mean_loss(lo, hi, alpha_c), 0.0)
            marks = rng.gamma(rng.poisson(area).astype(float))
            total = total + (loss * marks).sum(axis=1)
            start = w
        out[i] = total
    return out


def guard_radius(params: NetworkParams):
    """Deterministic guard radius: mean distance to the (N_c+2)-th nearest BS."""
    return expected_kth_distance(params.lambda_B, params.N_c + 2)


def _chunk_interference(rng, n, params, cfg, cooperative, windows=None):
    windows = (cfg.window_factor,) if windows is None else windows
    lam, a = params.lambda_B, params.alpha_c
    root = math.sqrt(lam)
    if not cooperative:
        rho_in, atom = cfg.floor_factor, None
    elif cfg.guard_mode == FIXED_MEAN:
        rho_in, atom = guard_radius(params) * root, None
    else:
        k = params.N_c + 2
        rho_k = np.sqrt(rng.gamma(k, 1.0, size=n) / math.pi)
        rho_in, atom = rho_k, rho_k
    norm = _normalized_shot_noise(rng, n, a, rho_in, windows, cfg, atom=atom)
    out = norm * lam ** (a / 2)
    return out[0] if len(windows) == 1 else out


def _chunks(cfg, trials=None):
    trials = cfg.trials if trials is None else trials
    sizes = [cfg.chunk_size] * (trials // cfg.chunk_size)
    if trials % cfg.chunk_size:
        sizes.append(trials % cfg.chunk_size)
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(sizes))
    return list(zip(sizes, seeds))


def _map(func, jobs, workers):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, *zip(*jobs)))
    return [func(*job) for job in jobs]


class _InterferenceJob:
    def __init__(self, params, cfg, cooperative, windows=None):
        self.params, self.cfg, self.cooperative, self.windows = params, cfg, cooperative, windows

    def __call__(self, size, seed_seq):
        rng = np.random.default_rng(seed_seq)
        return _chunk_interference(rng, size, self.params, self.cfg, self.cooperative, self.windows)


def sample_interference_batch(params: NetworkParams, cfg: McConfig, cooperative=True, trials=None):
    """``cfg.trials`` i.i.d. draws of the aggregated interference (physical units)."""
    check(params)
    job = _InterferenceJob(params, cfg, cooperative)
    return np.concatenate(_map(job, _chunks(cfg, trials), cfg.workers))


def sample_interference_nested(params: NetworkParams, cfg: McConfig, window_factors, cooperative=False):
    """Draws on several nested windows sharing the same inner realization.

    Returns an array of shape ``(len(window_factors), trials)``; row i uses
    outer radius ``window_factors[i] * lambda_B^(-1/2)``.
    """
    check(params)
    windows = tuple(sorted(float(w) for w in window_factors))
    if list(windows) != [float(w) for w in window_factors]:
        raise ValueError("window_factors must be increasing")
    job = _InterferenceJob(params, cfg, cooperative, windows)
    return np.concatenate(_map(job, _chunks(cfg), cfg.workers), axis=1)


def sample_interference(params: NetworkParams, cfg: McConfig, cooperative=True, seed=None):
    """A single interference draw; ``seed`` overrides ``cfg.seed``."""
    cfg = cfg if seed is None else cfg.with_(seed=seed)
    rng = np.random.default_rng(cfg.seed)
    return float(_chunk_interference(rng, 1, check(params), cfg, cooperative)[0])


# -- empirical distribution tools -------------------------------------------

def empirical_ccdf(draws, grid):
    """Fraction of draws strictly above each grid point."""
    draws = np.sort(np.asarray(draws, dtype=float))
    if draws.size == 0:
        raise ValueError("need at least one draw")
    grid = np.asarray(grid, dtype=float)
    return 1.0 - np.searchsorted(draws, grid, side="right") / draws.size


def empirical_cf(draws, omegas):
    draws = np.asarray(draws, dtype=float)
    return np.array([np.exp(1j * w * draws).mean() for w in np.atleast_1d(omegas)])


def ks_distance(empirical, model_ccdf, grid=None):
    """Sup-norm gap between an empirical curve and a model curve on a shared grid.

    ``model_ccdf`` is either an array of model values or a callable
    evaluated on ``grid``.
    """
    empirical = np.asarray(empirical, dtype=float)
    if callable(model_ccdf):
        model = np.asarray([model_ccdf(x) for x in grid], dtype=float)
    else:
        model = np.asarray(model_ccdf, dtype=float)
    if model.shape != empirical.shape:
        raise ValueError("curves must share a grid")
    return float(np.max(np.abs(empirical - model)))


def _binomial(p_hat, n, seed, factor=1.0):
    se = math.sqrt(max(p_hat * (1 - p_hat), 0.0) / n)
    return McEstimate(float(factor * p_hat), float(factor * se), int(n), seed)


def mc_false_alarm_rate(params: NetworkParams, eta, cfg: McConfig, cooperative=True, draws=None):
    """Empirical P{I > eta} with binomial standard error; ``eta`` may be a sequence."""
    if draws is None:
        draws = sample_interference_batch(params, cfg, cooperative)
    etas = np.atleast_1d(np.asarray(eta, dtype=float))
    if np.any(etas <= 0):
        raise ValueError("eta must be positive")
    p = empirical_ccdf(draws, etas)
    out = [_binomial(float(pi), draws.size, cfg.seed) for pi in p]
    return out[0] if np.ndim(eta) == 0 else out


class _CoverageJob:
    def __init__(self, params, cfg, t_r):
        self.params, self.cfg, self.t_r = params, cfg, t_r

    def __call__(self, size, seed_seq):
        p = self.params
        rng = np.random.default_rng(seed_seq)
        interference = _chunk_interference(rng, size, p, self.cfg, True)
        r_1 = np.sqrt(rng.standard_exponential(size) / (math.pi * p.lambda_B))
        d_1 = link_distance(r_1, p)
        signal = p.processing_gain * sir_constant(p) * d_1 ** (-2 * p.alpha_r) * rng.standard_exponential(size)
        with np.errstate(divide="ignore"):
            sir = signal / interference
        return (sir[:, None] > self.t_r[None, :]).sum(axis=0)


def mc_ardcp(params: NetworkParams, t_r, cfg: McConfig):
    """Estimate lambda_B * K * P{NM gamma_r > T_r} with a guarded interference draw per trial.

    ``t_r`` may be a sequence; all thresholds are evaluated on the same
    draws, so the estimates are nested.
    """
    check(params)
    t = np.atleast_1d(np.asarray(t_r, dtype=float))
    factor = params.lambda_B * params.K
    if np.all(t <= 0):
        est = [McEstimate(factor, 0.0, cfg.trials, cfg.seed) for _ in t]
    else:
        job = _CoverageJob(params, cfg, t)
        hits = np.sum(_map(job, _chunks(cfg), cfg.workers), axis=0)
        est = [_binomial(h / cfg.trials, cfg.trials, cfg.seed, factor) for h in hits]
    return est[0] if np.ndim(t_r) == 0 else est
