import math

import numpy as np
import pytest

from isac_sensing.params import NetworkParams


def exact_shot_noise(rng, n, density, alpha_c, r_in, r_out):
    """Independent oracle: point-by-point shot noise on an annulus, Exp(1) marks."""
    counts = rng.poisson(density * math.pi * (r_out**2 - r_in**2), size=n)
    owner = np.repeat(np.arange(n), counts)
    r2 = rng.uniform(r_in**2, r_out**2, size=owner.size)
    terms = r2 ** (-alpha_c / 2) * rng.standard_exponential(owner.size)
    return np.bincount(owner, weights=terms, minlength=n)


def binomial_sigma(p, n):
    return math.sqrt(p * (1 - p) / n)


@pytest.fixture
def unit_guard_params():
    # lambda = 1/(2 pi), alpha_c = 4, r_c = 1: kappa_1 = 1/2, kappa_2 = 1/3
    return NetworkParams(lambda_B=1 / (2 * math.pi), alpha_c=4.0)


@pytest.fixture(scope="session")
def acceptance_log(request):
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])
    return lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s[7:9])):
            terminalreporter.write_line(line)
