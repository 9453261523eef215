import math
import warnings

import numpy as np
import pytest

from conftest import binomial_sigma
from isac_sensing import montecarlo
from isac_sensing.coverage import CoverageMode, ardcp, conditional_coverage, q_factor
from isac_sensing.params import NetworkParams, link_distance, sir_constant


def test_q_factor():
    p = NetworkParams(N=1, M=1, N_r=1, xi=1.0, alpha_r=2.0)
    assert q_factor(0.0, 1.0, p) == 0.0
    assert q_factor(1.0, 1.0, p) == pytest.approx(4 * math.pi)
    assert q_factor(1.0, 2.0, p) == pytest.approx(16 * 4 * math.pi)


def test_conditional_coverage_limits():
    p = NetworkParams(lambda_B=1e-5)
    assert conditional_coverage(0.0, 100.0, p) == 1.0
    vals = [conditional_coverage(t, 100.0, p) for t in np.geomspace(1, 1e14, 15)]
    assert np.all(np.diff(vals) <= 0) and vals[1] < vals[0]
    assert vals[-1] < 1e-6


def test_conditional_coverage_against_simulation():
    p = NetworkParams(lambda_B=1e-5, N_c=3, N=64, M=16, N_r=16, xi=1.0)
    assert p.delta_h_r == 75.0
    analytic = conditional_coverage(10.0, 100.0, p)
    cfg = montecarlo.McConfig(trials=1_000_000, seed=77)
    interference = montecarlo.sample_interference_batch(p, cfg)
    rng = np.random.default_rng(78)
    signal = (p.processing_gain * sir_constant(p) * link_distance(100.0, p) ** (-2 * p.alpha_r)
              * rng.standard_exponential(interference.size))
    hit = (signal / interference > 10.0).mean()
    assert abs(hit - analytic) < 3 * binomial_sigma(analytic, interference.size)


def test_coverage_increases_with_cluster_size():
    vals = [conditional_coverage(1e3, 150.0, NetworkParams(lambda_B=1e-4, N_c=n)) for n in (0, 1, 3, 7)]
    assert np.all(np.diff(vals) > 0)


def test_ardcp_zero_threshold():
    p = NetworkParams(lambda_B=3e-5, K=2)
    assert ardcp(0.0, p) == 3e-5 * 2


def test_ardcp_decreasing_in_threshold():
    p = NetworkParams(lambda_B=1e-5)
    vals = [ardcp(t, p) for t in np.geomspace(1, 1e6, 7)]
    assert np.all(np.diff(vals) < 0)
    assert vals[0] <= p.lambda_B


def test_ardcp_against_simulation():
    p = NetworkParams(lambda_B=1e-5, N_c=3)
    est = montecarlo.mc_ardcp(p, 10.0, montecarlo.McConfig(trials=200_000, seed=5))
    assert est.value == pytest.approx(ardcp(10.0, p), rel=0.05)


def test_as_printed_form_warns_when_clamped():
    # the unexponentiated form exceeds 1 once the mean guard radius is small
    p = NetworkParams(lambda_B=1.0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        val = conditional_coverage(1e-8, 0.0, p, CoverageMode.AS_PRINTED)
    assert 0.0 <= val <= 1.0
    assert any("clamped" in str(w.message) for w in caught)
    p = NetworkParams(lambda_B=1e-5)
    assert ardcp(10.0, p, "laplace_corrected") == ardcp(10.0, p)
