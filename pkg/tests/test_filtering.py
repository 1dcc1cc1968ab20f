import math

import numpy as np
import pytest

from sfwmsim import (ConfigError, DeltaMarker, FilterPair, FilterSpec,
                     JointAmplitudeMatrix, ModelCompatibilityError,
                     TemporalGrid, filtered_jta, filtered_jta_gaussian_series,
                     filtered_jta_linear_gaussian, gaussian_time_kernel,
                     jta_linear, jta_simple, overlap, overlap_sampled,
                     time_kernel)
from sfwmsim.filtering import DELTA_KERNEL_WEIGHT, DELTA_OVERLAP_WEIGHT
from conftest import make_filters, make_grid, make_pump, make_waveguide

TWO_PI = 2.0 * math.pi


def test_filter_spec_validation():
    with pytest.raises(ConfigError):
        FilterSpec(sigma_f=None, shape="gaussian")
    with pytest.raises(ConfigError):
        FilterSpec(sigma_f=-1.0, shape="gaussian")
    with pytest.raises(ConfigError):
        FilterSpec(sigma_f=1.0, shape="lorentzian")
    assert not FilterSpec.unfiltered().is_gaussian
    assert FilterSpec(sigma_f=0.5).is_gaussian


def test_bandwidth_ratios():
    pump = make_pump(sigma_t=1.0)  # sigma_w = 0.5
    pair = FilterPair(FilterSpec(sigma_f=0.25), FilterSpec.unfiltered())
    assert pair.ratios(pump) == (2.0, 0.0)


def test_time_kernel_peak_and_self_overlap():
    sigma_f = 0.4
    assert gaussian_time_kernel(sigma_f, 0.0) == pytest.approx(math.sqrt(2) * sigma_f)
    # closed-form self-overlap at zero separation is sigma_f * sqrt(2 pi)
    filt = FilterSpec(sigma_f=sigma_f)
    assert overlap(filt, 0.0) == pytest.approx(sigma_f * math.sqrt(TWO_PI))


def test_overlap_decay():
    filt = FilterSpec(sigma_f=0.4)
    ratio = overlap(filt, 2.0 / 0.4) / overlap(filt, 0.0)
    assert ratio == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_sampled_overlap_matches_closed_form():
    pump = make_pump()
    grid = make_grid(pump, [FilterSpec(sigma_f=0.3)], n_points=512)
    f1 = gaussian_time_kernel(0.3, grid.tau)
    f2 = gaussian_time_kernel(0.7, grid.tau)
    got = overlap_sampled(f1, f2, grid)
    want = 2.0 * 0.3 * 0.7 * math.sqrt(math.pi / (0.3 ** 2 + 0.7 ** 2))
    assert got == pytest.approx(want, rel=1e-10)


def test_unfiltered_side_returns_delta_markers():
    grid = TemporalGrid(n_points=16, dt=0.5)
    marker = time_kernel(FilterSpec.unfiltered(), grid)
    assert isinstance(marker, DeltaMarker)
    assert marker.weight == pytest.approx(math.sqrt(TWO_PI))
    omarker = overlap(FilterSpec.unfiltered(), 0.0)
    assert isinstance(omarker, DeltaMarker)
    assert omarker.weight == pytest.approx(2.0 * math.sqrt(2.0) * math.pi)
    assert DELTA_KERNEL_WEIGHT == pytest.approx(math.sqrt(TWO_PI))
    assert DELTA_OVERLAP_WEIGHT == pytest.approx(2.0 * math.sqrt(2.0) * math.pi)


def test_joint_matrix_validation():
    grid = TemporalGrid(n_points=16, dt=0.5)
    with pytest.raises(ConfigError):
        JointAmplitudeMatrix(grid, grid, np.ones(16, dtype=complex))
    with pytest.raises(ConfigError):
        JointAmplitudeMatrix(grid, grid, np.ones((16, 8), dtype=complex))
    bad = np.ones((16, 16), dtype=complex)
    bad[2, 3] = np.inf
    with pytest.raises(ConfigError):
        JointAmplitudeMatrix(grid, grid, bad)
    with pytest.raises(ConfigError):
        JointAmplitudeMatrix(grid, grid, np.ones((16, 16), dtype=complex),
                             domain_tag="phase-space")


@pytest.mark.parametrize("lam,mu", [(2.0, 2.0), (1.0, 4.0), (0.5, 2.0)])
def test_convolved_linear_jta_matches_closed_form(lam, mu):
    """Trapezoid convolution vs the analytic filtered amplitude."""
    pump = make_pump(phi_max=0.1)
    wg = make_waveguide()
    filters = make_filters(lam, mu, pump)
    grid = make_grid(pump, [filters.signal, filters.idler], n_points=256)
    diag = jta_linear(pump, wg, grid)
    got = filtered_jta(diag, filters)
    want = filtered_jta_linear_gaussian(pump, wg, filters, grid)
    scale = np.abs(want.values).max()
    assert np.abs(got.values - want.values).max() / scale < 1e-8


def test_closed_form_axis_roles():
    """lambda multiplies the idler coordinate, mu the signal coordinate."""
    pump = make_pump(phi_max=0.1)
    wg = make_waveguide()
    grid = make_grid(pump, [FilterSpec(sigma_f=0.25)], n_points=64)
    asym = filtered_jta_linear_gaussian(pump, wg, make_filters(2.0, 0.5, pump), grid)
    swapped = filtered_jta_linear_gaussian(pump, wg, make_filters(0.5, 2.0, pump), grid)
    np.testing.assert_allclose(asym.values, swapped.values.T, rtol=1e-13)
    # along tau_s with tau_i = 0 the decay rate is (2 mu^2 + 1) sigma_w^2 / D0
    lam, mu, sw = 2.0, 0.5, pump.sigma_w
    d0 = 2 * lam ** 2 * mu ** 2 + lam ** 2 + mu ** 2
    k0 = grid.index_of(0.0)
    k1 = grid.index_of(grid.dt * 8)
    t1 = grid.tau[k1]
    got = np.log(np.abs(asym.values[k1, k0] / asym.values[k0, k0]))
    assert got == pytest.approx(-sw ** 2 * (2 * mu ** 2 + 1) * t1 ** 2 / d0,
                                rel=1e-10)


def test_single_sided_collapse_entries():
    pump = make_pump(phi_max=0.1)
    wg = make_waveguide()
    sigma_f = 0.25
    filters = FilterPair(FilterSpec(sigma_f=sigma_f), FilterSpec.unfiltered())
    grid = make_grid(pump, [filters.signal], n_points=64)
    diag = jta_linear(pump, wg, grid)
    matrix = filtered_jta(diag, filters)
    j, k = 20, 33
    expected = (diag.values[k]
                * gaussian_time_kernel(sigma_f, grid.tau[j] - grid.tau[k])
                * math.sqrt(TWO_PI) / TWO_PI)
    assert matrix.values[j, k] == pytest.approx(expected, rel=1e-14)


def test_single_sided_mirror_is_the_transpose():
    pump = make_pump(phi_max=0.1)
    wg = make_waveguide()
    filt = FilterSpec(sigma_f=0.25)
    grid = make_grid(pump, [filt], n_points=64)
    diag = jta_linear(pump, wg, grid)
    m_sig = filtered_jta(diag, FilterPair(filt, FilterSpec.unfiltered()))
    m_idl = filtered_jta(diag, FilterPair(FilterSpec.unfiltered(), filt))
    np.testing.assert_allclose(m_idl.values, m_sig.values.T, rtol=0, atol=0)


def test_fully_unfiltered_convolution_rejected():
    pump = make_pump()
    grid = make_grid(pump, n_points=64)
    diag = jta_linear(pump, make_waveguide(), grid)
    pair = FilterPair(FilterSpec.unfiltered(), FilterSpec.unfiltered())
    with pytest.raises(ConfigError):
        filtered_jta(diag, pair)


def test_closed_forms_need_both_filters():
    pump = make_pump()
    grid = make_grid(pump, n_points=64)
    pair = FilterPair(FilterSpec(sigma_f=0.25), FilterSpec.unfiltered())
    with pytest.raises(ConfigError):
        filtered_jta_linear_gaussian(pump, make_waveguide(), pair, grid)


@pytest.mark.parametrize("phi,n_terms", [(0.5, 18), (1.0, 24), (2.0, 34)])
def test_series_truncation_counts(phi, n_terms):
    """Terms are added while (3 phi)^n / n! >= 1e-12."""
    pump = make_pump(phi_max=phi)
    filters = make_filters(2.0, 2.0, pump)
    grid = make_grid(pump, [filters.signal, filters.idler], n_points=64)
    res = filtered_jta_gaussian_series(pump, make_waveguide(), filters, grid)
    assert res.n_terms == n_terms
    assert res.residual_bound < 1e-10


def test_series_first_term_is_the_linear_closed_form():
    pump = make_pump(phi_max=1e-9)
    wg = make_waveguide()
    filters = make_filters(2.0, 2.0, pump)
    grid = make_grid(pump, [filters.signal, filters.idler], n_points=64)
    res = filtered_jta_gaussian_series(pump, wg, filters, grid)
    want = filtered_jta_linear_gaussian(pump, wg, filters, grid)
    np.testing.assert_allclose(res.matrix.values, want.values, rtol=1e-8)


def test_series_agrees_with_direct_convolution():
    pump = make_pump(phi_max=0.5)
    wg = make_waveguide()
    filters = make_filters(2.0, 2.0, pump)
    grid = make_grid(pump, [filters.signal, filters.idler], n_points=128)
    res = filtered_jta_gaussian_series(pump, wg, filters, grid)
    direct = filtered_jta(jta_simple(pump, wg, grid), filters)
    num = np.linalg.norm(res.matrix.values - direct.values)
    assert num / np.linalg.norm(direct.values) < 1e-6


def test_series_guards():
    pump = make_pump(phi_max=0.5)
    filters = make_filters(2.0, 2.0, pump)
    grid = make_grid(pump, [filters.signal, filters.idler], n_points=64)
    with pytest.raises(ConfigError):
        filtered_jta_gaussian_series(pump, make_waveguide(), filters, grid, tol=0.0)
    with pytest.raises(ModelCompatibilityError):
        filtered_jta_gaussian_series(pump, make_waveguide(alpha=0.1), filters, grid)
    one_sided = FilterPair(FilterSpec(sigma_f=0.25), FilterSpec.unfiltered())
    with pytest.raises(ConfigError):
        filtered_jta_gaussian_series(pump, make_waveguide(), one_sided, grid)


def test_output_grid_override():
    pump = make_pump(phi_max=0.1)
    filters = make_filters(2.0, 2.0, pump)
    src = make_grid(pump, [filters.signal, filters.idler], n_points=128)
    out = TemporalGrid(n_points=64, dt=src.dt)
    diag = jta_linear(pump, make_waveguide(), src)
    matrix = filtered_jta(diag, filters, out_grid=out)
    assert matrix.values.shape == (64, 64)
    assert matrix.grid_s is out and matrix.grid_i is out
