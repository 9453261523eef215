"""Acceptance checks, runnable from pytest or ``isac-sensing validate``.

Every check has its parameter point, seed and tolerance pinned here. The
``fast`` level only lowers the Monte Carlo trial count; tolerances are the
same at both levels.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import cfar, coverage, interference, inversion, montecarlo, specials
from .interference import campbell_cumulant
from .params import NetworkParams

BASE_SEED = 20261018
TRIALS = {"fast": 100_000, "full": 1_000_000}
OMEGA_GRID = np.geomspace(0.01, 10.0, 50)
# dimensionless density for the CF checks: at lambda_B = 1 m^-2 the CFs vary
# across the whole [0.01, 10] frequency grid
UNIT_DENSITY = 1.0


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    metrics: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _mc(level, number, **kw):
    return montecarlo.McConfig(trials=TRIALS[level], seed=BASE_SEED + number, **kw)


def campbell_match(level="full"):
    params = NetworkParams(lambda_B=1e-4, alpha_c=4.0, N_c=3)
    r_c = montecarlo.guard_radius(params)
    draws = montecarlo.sample_interference_batch(params, _mc(level, 1))
    k1, k2 = campbell_cumulant(1, params, r_c), campbell_cumulant(2, params, r_c)
    err_mean = abs(draws.mean() / k1 - 1)
    err_var = abs(draws.var(ddof=1) / k2 - 1)
    ok = err_mean < 0.02 and err_var < 0.05
    return ok, f"mean rel err {err_mean:.2e} (<2e-2), var rel err {err_var:.2e} (<5e-2)", {
        "kappa1": k1, "kappa2": k2, "mean_rel_err": err_mean, "var_rel_err": err_var}


def tsd_roundtrip(level="full"):
    params = NetworkParams(lambda_B=1e-4, alpha_c=4.0, N_c=3)
    r_c = montecarlo.guard_radius(params)
    tp = interference.tsd_params_coop(params, r_c)
    errs = [abs(tp.cumulant(n) / campbell_cumulant(n, params, r_c) - 1) for n in (1, 2)]
    return max(errs) < 1e-10, f"max rel err {max(errs):.1e} (<1e-10)", {"rel_err": max(errs)}


def stable_limit(level="full"):
    params = NetworkParams(lambda_B=UNIT_DENSITY)
    stable = interference.stable_params_noncoop(params).cf(OMEGA_GRID)
    windows = (1e2, 1e3)
    draws = montecarlo.sample_interference_nested(params, _mc(level, 3), windows, cooperative=False)
    gaps = [float(np.abs(montecarlo.empirical_cf(row, OMEGA_GRID) - stable).max()) for row in draws]
    exact = [float(np.abs(interference.finite_window_cf(params, OMEGA_GRID, w) - stable).max())
             for w in windows]
    ok = gaps[-1] < 0.02 and gaps[0] > gaps[1]
    return ok, (f"sup gap {gaps[0]:.3e} @1e2, {gaps[1]:.3e} @1e3 (<2e-2, decreasing); "
                f"finite-disk CF gap {exact[0]:.1e}, {exact[1]:.1e}"), {
        "empirical_gap": gaps, "finite_window_gap": exact}


def truncation_limit(level="full"):
    params = NetworkParams(lambda_B=UNIT_DENSITY)
    r_c = 1e-3 / math.sqrt(params.lambda_B)
    tp = interference.tsd_params_coop(params, r_c)
    sp = interference.stable_params_noncoop(params)
    gap = float(np.abs(tp.cf(OMEGA_GRID) - sp.cf(OMEGA_GRID)).max())
    return gap < 0.05, f"sup |tsd_cf - stable_cf| = {gap:.4f} (<0.05)", {"gap": gap}


def _ks_pair(lam, seed_offset, level):
    params = NetworkParams(lambda_B=lam, alpha_c=4.0, N_c=3)
    r_c = montecarlo.guard_radius(params)
    draws = montecarlo.sample_interference_batch(params, _mc(level, seed_offset))
    grid = campbell_cumulant(1, params, r_c) * np.geomspace(0.05, 20.0, 80)
    emp = montecarlo.empirical_ccdf(draws, grid)
    tsd = interference.tsd_params_coop(params, r_c)
    sia = interference.SiaParams(lam, params.alpha_c, r_c)
    return (montecarlo.ks_distance(emp, tsd.ccdf(grid)),
            montecarlo.ks_distance(emp, sia.ccdf(grid)))


def regime_reproduction(level="full"):
    dense_tsd, dense_sia = _ks_pair(1e-4, 5, level)
    sparse_tsd, sparse_sia = _ks_pair(1e-6, 55, level)
    dense_ok = dense_tsd < dense_sia and dense_tsd < 0.02
    sparse_ok = sparse_sia < sparse_tsd
    detail = (f"dense KS tsd {dense_tsd:.4f} / sia {dense_sia:.4f} [{'ok' if dense_ok else 'fail'}]; "
              f"sparse KS tsd {sparse_tsd:.4f} / sia {sparse_sia:.4f} [{'ok' if sparse_ok else 'fail'}]")
    return dense_ok and sparse_ok, detail, {
        "dense": {"ks_tsd": dense_tsd, "ks_sia": dense_sia},
        "sparse": {"ks_tsd": sparse_tsd, "ks_sia": sparse_sia}}


def gil_pelaez_oracle(level="full"):
    law = inversion.CfLaw(lambda w: 1.0 / (1.0 - 1j * w))
    err_ccdf = abs(inversion.ccdf_from_cf(law, 1.0) - math.exp(-1.0))
    err_q = abs(inversion.quantile_from_cf(law, 0.1) / math.log(10.0) - 1)
    ok = err_ccdf < 1e-6 and err_q < 1e-6
    return ok, f"ccdf abs err {err_ccdf:.1e}, quantile rel err {err_q:.1e} (<1e-6)", {
        "ccdf_abs_err": err_ccdf, "quantile_rel_err": err_q}


def cfar_consistency(level="full"):
    params = NetworkParams(lambda_B=1e-4, alpha_c=4.0, N_c=3)
    r_c = montecarlo.guard_radius(params)
    model = interference.tsd_params_coop(params, r_c)
    p_bin = 1e-2
    res = cfar.resolve_cfar(cfar.bin_to_frame(p_bin, params.N, params.M), params, model, r_c)
    est = montecarlo.mc_false_alarm_rate(params, res.eta, _mc(level, 7))
    sigma = math.sqrt(p_bin * (1 - p_bin) / est.trials)
    z = (est.value - p_bin) / sigma
    trip = 0.0
    nm = params.N, params.M
    for p in (1e-3, 0.05, 0.5):
        trip = max(trip, abs(cfar.bin_to_frame(cfar.frame_to_bin(p, *nm), *nm) / p - 1))
    ok = abs(z) <= 3 and trip <= 1e-12
    return ok, (f"MC false alarm {est.value:.5f} vs {p_bin} ({z:+.1f} sigma, |z|<=3); "
                f"frame<->bin roundtrip {trip:.1e} (<=1e-12)"), {
        "eta": res.eta, "mc_rate": est.value, "z": z, "roundtrip": trip}


def ardcp_vs_simulation(level="full"):
    params = NetworkParams(lambda_B=1e-5, N_c=3)
    t_rs = [1.0, 10.0, 100.0, 1e3, 1e4]
    analytic = [coverage.ardcp(t, params) for t in t_rs]
    mc = montecarlo.mc_ardcp(params, t_rs, _mc(level, 8))
    gaps = [abs(m.value / a - 1) for a, m in zip(analytic, mc)]
    return max(gaps) < 0.05, f"max rel gap {max(gaps):.2e} over T_r in {t_rs} (<5e-2)", {
        "t_r": t_rs, "analytic": analytic, "mc": [m.value for m in mc], "rel_gap": gaps}


def ardcp_trends(level="full"):
    t_r = 1e3
    cases = [
        ("h_B", NetworkParams(lambda_B=1e-6, h_T=100.0), (10.0, 50.0)),
        ("N_c", NetworkParams(lambda_B=1e-4), (1, 7)),
    ]
    ok = True
    parts, metrics = [], {}
    for name, base, values in cases:
        pts = [base.with_(**{name: v}) for v in values]
        an = [coverage.ardcp(t_r, p) for p in pts]
        mc = [montecarlo.mc_ardcp(p, t_r, _mc(level, 9)).value for p in pts]
        good = an[1] > an[0] and mc[1] > mc[0]
        ok &= good
        parts.append(f"{name} {values[0]}->{values[1]}: analytic x{an[1] / an[0]:.4f}, "
                     f"MC x{mc[1] / mc[0]:.4f} [{'ok' if good else 'fail'}]")
        metrics[name] = {"analytic": an, "mc": mc}
    return ok, "; ".join(parts), metrics


def _euler_2f1(a, b, c, z):
    val, _ = integrate.quad(lambda t: (1 - z * t) ** (-a), 0, 1, weight="alg",
                            wvar=(b - 1, c - b - 1), epsabs=0, epsrel=1e-13, limit=200)
    return math.gamma(c) / (math.gamma(b) * math.gamma(c - b)) * val


def special_functions(level="full"):
    tuples = [(1.0, 0.5, 1.5, -1.0), (1.0, 0.5, 1.5, -100.0)]
    for ac in (3.0, 3.5, 4.0, 5.0):
        for z in (-1e-3, -0.3, -0.7, -1.5, -10.0, -1e2, -1e3):
            tuples.append((1.0, 1 - 2 / ac, 2 - 2 / ac, z))
    err_f = max(abs(specials.gauss_2f1(*t) / _euler_2f1(*t) - 1) for t in tuples)
    xs = np.linspace(0.1, 20.0, 200)
    err_g = max(abs(specials.gamma_fn(x + 1) / (x * specials.gamma_fn(x)) - 1) for x in xs)
    ok = err_f < 1e-7 and err_g < 1e-10
    return ok, f"2F1 vs Euler integral {err_f:.1e} (<1e-7), Gamma recurrence {err_g:.1e} (<1e-10)", {
        "hyp2f1_rel_err": err_f, "gamma_recurrence_err": err_g}


CRITERIA = {
    1: ("Campbell cumulant match", campbell_match),
    2: ("TSD cumulant roundtrip", tsd_roundtrip),
    3: ("stable limit of unguarded interference", stable_limit),
    4: ("truncation limit r_c -> 0", truncation_limit),
    5: ("SIA/TSD regime reproduction", regime_reproduction),
    6: ("Gil-Pelaez exponential oracle", gil_pelaez_oracle),
    7: ("CFAR chain consistency", cfar_consistency),
    8: ("ARDCP closed form vs MC", ardcp_vs_simulation),
    9: ("ARDCP trends in h_B and N_c", ardcp_trends),
    10: ("special functions", special_functions),
}


def run_criterion(number, level="full") -> CriterionResult:
    name, func = CRITERIA[number]
    start = time.perf_counter()
    ok, detail, metrics = func(level)
    return CriterionResult(number, name, bool(ok), detail, metrics, time.perf_counter() - start)


def run_acceptance(level="full", only=None, echo=print):
    if level not in TRIALS:
        raise ValueError(f"level must be one of {sorted(TRIALS)}")
    results = []
    for number in sorted(only or CRITERIA):
        res = run_criterion(number, level)
        if echo:
            echo(res.line())
        results.append(res)
    return results
