import math

import numpy as np
import pytest

from sfwmsim import (AccuracyError, ConfigError, DiagonalJTA,
                     ModelCompatibilityError, TemporalGrid, jta_general,
                     jta_linear, jta_simple, jta_sinc)
from conftest import make_grid, make_pump, make_waveguide

SINC_HALF = math.sin(0.5) / 0.5  # 0.958851...


def test_linear_is_purely_imaginary_with_peak_phi():
    pump = make_pump(phi_max=0.3)
    grid = make_grid(pump, n_points=128)
    diag = jta_linear(pump, make_waveguide(), grid)
    assert np.all(diag.values.real == 0.0)
    k0 = grid.index_of(0.0)
    assert diag.values[k0] == pytest.approx(0.3j)
    # Gaussian envelope of the power profile
    k1 = grid.index_of(1.0)
    assert abs(diag.values[k1]) == pytest.approx(0.3 * math.exp(-0.5), rel=1e-12)


def test_simple_sxpm_keeps_the_linear_magnitude():
    pump = make_pump(phi_max=0.8)
    grid = make_grid(pump, n_points=128)
    wg = make_waveguide()
    lin = jta_linear(pump, wg, grid)
    spm = jta_simple(pump, wg, grid)
    np.testing.assert_allclose(np.abs(spm.values), np.abs(lin.values),
                               rtol=1e-14, atol=0)
    # each sample rotated by three times the local nonlinear phase
    ratio = spm.values / np.where(lin.values == 0, 1, lin.values)
    k0 = grid.index_of(0.0)
    assert ratio[k0] == pytest.approx(np.exp(3j * 0.8), rel=1e-12)


def test_sinc_envelope_at_matched_peak():
    """delta_beta0 = 2 gamma P0 puts the peak exactly on phase matching."""
    pump = make_pump(phi_max=0.5)
    wg = make_waveguide(delta_beta0=1.0)
    grid = make_grid(pump, n_points=128)
    k0 = grid.index_of(0.0)
    lin = jta_linear(pump, make_waveguide(), grid)
    snc = jta_sinc(pump, wg, grid)
    assert abs(snc.values[k0]) == pytest.approx(abs(lin.values[k0]), rel=1e-12)


def test_sinc_suppression_without_mismatch():
    # at the peak the argument is -gamma P0 L = -0.5
    pump = make_pump(phi_max=0.5)
    grid = make_grid(pump, n_points=128)
    lin = jta_linear(pump, make_waveguide(), grid)
    snc = jta_sinc(pump, make_waveguide(), grid)
    k0 = grid.index_of(0.0)
    assert abs(snc.values[k0] / lin.values[k0]) == pytest.approx(SINC_HALF,
                                                                 rel=1e-12)


def test_sinc_phase_includes_half_mismatch():
    pump = make_pump(phi_max=0.4)
    wg = make_waveguide(delta_beta0=2.5)
    grid = make_grid(pump, n_points=128)
    snc = jta_sinc(pump, wg, grid)
    k0 = grid.index_of(0.0)
    expected = np.angle(1j * np.exp(1j * (3 * 0.4 + 2.5 / 2.0)))
    assert np.angle(snc.values[k0]) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("maker", [jta_simple, jta_sinc])
def test_lossy_waveguide_rejected_by_closed_form_models(maker):
    pump = make_pump()
    grid = make_grid(pump, n_points=64)
    with pytest.raises(ModelCompatibilityError, match="general_quadrature"):
        maker(pump, make_waveguide(alpha=0.1), grid)
    with pytest.raises(ModelCompatibilityError):
        maker(pump, make_waveguide(alpha2_P=0.1), grid)


def test_general_matches_simple_at_weak_pump():
    # the residual sinc(gamma P L) factor is ~1 - phi^2/6, so use phi = 1e-5
    pump = make_pump(phi_max=1e-5)
    wg = make_waveguide()
    grid = make_grid(pump, n_points=128)
    gen = jta_general(pump, wg, grid)
    ref = jta_simple(pump, wg, grid)
    err = np.linalg.norm(gen.values - ref.values) / np.linalg.norm(ref.values)
    assert err <= 1e-10


@pytest.mark.parametrize("phi,db0", [(0.5, 0.0), (0.5, 3.0), (2.0, -1.5)])
def test_general_reduces_to_sinc_when_lossless(phi, db0):
    pump = make_pump(phi_max=phi)
    wg = make_waveguide(delta_beta0=db0)
    grid = make_grid(pump, n_points=128)
    gen = jta_general(pump, wg, grid)
    ref = jta_sinc(pump, wg, grid)
    err = np.linalg.norm(gen.values - ref.values) / np.linalg.norm(ref.values)
    assert err <= 1e-8


def test_general_loss_shrinks_the_amplitude():
    pump = make_pump(phi_max=1.0)
    grid = make_grid(pump, n_points=128)
    lossless = jta_general(pump, make_waveguide(), grid)
    lossy = jta_general(pump, make_waveguide(alpha=0.8), grid)
    assert np.all(np.abs(lossy.values) <= np.abs(lossless.values) + 1e-15)
    assert np.abs(lossy.values).max() < np.abs(lossless.values).max()


def test_general_literal_z_changes_tpa_results():
    pump = make_pump(phi_max=1.0)
    wg = make_waveguide(alpha=0.2, alpha2_P=0.5)
    grid = make_grid(pump, n_points=64)
    a = jta_general(pump, wg, grid)
    b = jta_general(pump, wg, grid, literal_z=True)
    assert np.abs(a.values - b.values).max() > 1e-6


def test_general_unconverged_quadrature_raises():
    pump = make_pump(phi_max=0.1)
    wg = make_waveguide(delta_beta0=4e4)  # ~6400 oscillations over the length
    grid = make_grid(pump, n_points=64)
    with pytest.raises(AccuracyError) as excinfo:
        jta_general(pump, wg, grid)
    assert excinfo.value.coarse is not None
    assert excinfo.value.fine is not None
    assert excinfo.value.coarse.shape == (64,)


def test_general_order_floor():
    pump = make_pump()
    grid = make_grid(pump, n_points=64)
    with pytest.raises(ConfigError):
        jta_general(pump, make_waveguide(), grid, quadrature_order=4)


def test_diagonal_jta_validation():
    grid = TemporalGrid(n_points=16, dt=0.5)
    with pytest.raises(ConfigError):
        DiagonalJTA(grid, np.ones(8, dtype=complex))
    bad = np.ones(16, dtype=complex)
    bad[3] = np.nan + 0j
    with pytest.raises(ConfigError):
        DiagonalJTA(grid, bad)


def test_edge_tail_ratio():
    pump = make_pump(phi_max=1.0)
    grid = make_grid(pump, n_points=128)
    diag = jta_linear(pump, make_waveguide(), grid)
    # right edge sits at +8 - dt = 7.875 and dominates the left one at -8
    assert diag.edge_tail_ratio() == pytest.approx(math.exp(-7.875 ** 2 / 2.0),
                                                   rel=1e-10)
    zero = DiagonalJTA(grid, np.zeros(128, dtype=complex))
    assert zero.edge_tail_ratio() == 0.0
