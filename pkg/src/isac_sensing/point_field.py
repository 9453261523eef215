"""Homogeneous PPP sampling on annuli and nearest-neighbour distance laws."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

DEFAULT_MAX_EXPECTED_POINTS = 10_000_000


class BudgetError(RuntimeError):
    """The requested window would hold more points than the configured cap."""


class PlanarPoint(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class FieldSample:
    """One PPP realization on the annulus ``window_inner <= |p| <= window_outer``.

    ``points`` is an ``(n, 2)`` float array of planar coordinates in meters.
    """

    points: np.ndarray
    window_inner: float
    window_outer: float
    density: float
    seed: int | None

    def __post_init__(self):
        if not self.window_inner < self.window_outer:
            raise ValueError("window_inner must be below window_outer")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return (PlanarPoint(float(x), float(y)) for x, y in self.points)

    @property
    def radii(self) -> np.ndarray:
        return np.hypot(self.points[:, 0], self.points[:, 1])


def as_generator(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def sample_annulus(density, r_in, r_out, seed, max_expected=DEFAULT_MAX_EXPECTED_POINTS):
    """Draw a PPP of the given intensity (per m^2) on an annulus around the origin.

    Radii come from the inverse CDF of the 2w density, i.e. the square root
    of a uniform on ``[r_in^2, r_out^2]``; angles are uniform.
    """
    if not density > 0:
        raise ValueError("density must be positive")
    if not 0 <= r_in < r_out:
        raise ValueError("need 0 <= r_in < r_out")
    mean_count = density * math.pi * (r_out**2 - r_in**2)
    if mean_count > max_expected:
        raise BudgetError(f"expected {mean_count:.3g} points exceeds cap {max_expected:.3g}")
    rng = as_generator(seed)
    n = rng.poisson(mean_count)
    r = np.sqrt(rng.uniform(r_in**2, r_out**2, size=n))
    theta = rng.uniform(0.0, 2 * math.pi, size=n)
    pts = np.column_stack((r * np.cos(theta), r * np.sin(theta)))
    return FieldSample(pts, float(r_in), float(r_out), float(density),
                       seed if isinstance(seed, (int, np.integer)) else None)


def _window_for(density, k, miss_prob=1e-6):
    # smallest doubling radius whose Poisson(lambda pi r^2) count is >= k w.p. 1 - miss_prob
    from scipy.stats import poisson

    r = math.sqrt(max(k, 1) / (math.pi * density))
    while poisson.cdf(k - 1, density * math.pi * r * r) > miss_prob:
        r *= 2.0
    return r


def kth_nearest_distance(source, k, density=None, seed=None):
    """Distance from the origin to the k-th nearest point.

    ``source`` is either a FieldSample (its k-th order statistic is returned)
    or None, in which case a fresh PPP of ``density`` is drawn on a disk made
    large enough that the k-th point exists with probability >= 1 - 1e-6. In
    the unlikely event it still is missing the disk is doubled and redrawn.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if source is not None:
        radii = np.sort(source.radii)
        if len(radii) < k:
            raise ValueError(f"sample holds only {len(radii)} points, need {k}")
        return float(radii[k - 1])
    rng = as_generator(seed)
    r_out = _window_for(density, k)
    while True:
        sample = sample_annulus(density, 0.0, r_out, rng)
        if len(sample) >= k:
            return float(np.partition(sample.radii, k - 1)[k - 1])
        r_out *= 2.0


def sample_kth_distances(density, k, size, seed):
    """Vectorized k-th nearest distances: pi*density*r_k^2 is Gamma(k, 1)."""
    rng = as_generator(seed)
    return np.sqrt(rng.gamma(k, 1.0, size=size) / (math.pi * density))


def expected_kth_distance(density, k):
    """E[r_k] = Gamma(k + 1/2) / (Gamma(k) sqrt(pi density))."""
    if not density > 0:
        raise ValueError("density must be positive")
    if k < 1:
        raise ValueError("k must be a positive integer")
    return math.exp(math.lgamma(k + 0.5) - math.lgamma(k)) / math.sqrt(math.pi * density)


def kth_distance_cdf(r, density, k):
    """P{r_k <= r}, the regularized lower incomplete Gamma in pi*density*r^2."""
    from scipy.special import gammainc

    return gammainc(k, math.pi * density * np.square(r))


def nearest_distance_pdf(r, density):
    """2 pi lambda r exp(-pi lambda r^2)."""
    r = np.asarray(r, dtype=float)
    out = 2 * math.pi * density * r * np.exp(-math.pi * density * r * r)
    out = np.where(r < 0, 0.0, out)
    return float(out) if out.ndim == 0 else out
