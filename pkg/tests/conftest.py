"""Shared builders for the test suite.

Convention used throughout: gamma = length = 1, so the peak power P0 equals
the peak nonlinear phase, and sigma_t = 1 ps so sigma_w = 0.5 rad/ps. Filters
are specified through the bandwidth ratios lambda = sigma_w / sigma_f
(signal) and mu (idler); a ratio of 0 means that side is unfiltered.
"""

import numpy as np
import pytest

from sfwmsim import FilterPair, FilterSpec, PumpPulse, Waveguide, build_temporal_grid


def make_pump(phi_max=0.1, sigma_t=1.0):
    return PumpPulse(P0=phi_max, sigma_t=sigma_t)


def make_waveguide(**kwargs):
    kwargs.setdefault("gamma", 1.0)
    kwargs.setdefault("length", 1.0)
    return Waveguide(**kwargs)


def filter_for_ratio(ratio, pump):
    if ratio == 0:
        return FilterSpec.unfiltered()
    return FilterSpec(sigma_f=pump.sigma_w / ratio)


def make_filters(lam, mu, pump):
    return FilterPair(filter_for_ratio(lam, pump), filter_for_ratio(mu, pump))


def make_grid(pump, filters=(), n_points=512, span_sigmas=8.0):
    specs = [f for f in filters if f is not None]
    return build_temporal_grid(pump, specs, span_sigmas=span_sigmas,
                               n_points=n_points)


@pytest.fixture
def rng():
    return np.random.default_rng(20260825)
