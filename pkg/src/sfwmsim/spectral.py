"""Frequency-domain views: the time<->frequency transform pair, the linear
closed form, and marginal-spectrum diagnostics.

Convention: forward transform kernel e^{+i delta tau} with 1/sqrt(2 pi) per
axis (unitary). On center-origin power-of-two grids the transform is realized
exactly by sign-modulated FFTs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .filtering import FilterPair, JointAmplitudeMatrix, _gaussian_ratios_or_raise
from .grids import TemporalGrid, is_power_of_two
from .pump import PumpPulse, Waveguide


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform detuning grid (rad/ps), conjugate to a TemporalGrid."""

    n_points: int
    d_omega: float

    def __post_init__(self):
        if not (isinstance(self.n_points, (int, np.integer)) and self.n_points >= 8
                and is_power_of_two(int(self.n_points))):
            raise ConfigError(
                f"spectral grid n_points {self.n_points!r} is not a power of two >= 8")
        if not self.d_omega > 0:
            raise ConfigError(f"spectral grid d_omega {self.d_omega!r} must be positive")

    @property
    def omega(self) -> np.ndarray:
        return (np.arange(self.n_points) - self.n_points // 2) * self.d_omega

    @property
    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.n_points, self.d_omega)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    @classmethod
    def conjugate_to(cls, grid: TemporalGrid) -> "SpectralGrid":
        """Grid satisfying d_omega * dt * n = 2 pi."""
        return cls(n_points=grid.n_points,
                   d_omega=2.0 * math.pi / (grid.n_points * grid.dt))


def _require_centered(grid) -> None:
    if getattr(grid, "center", 0.0) != 0.0:
        raise ConfigError("transforms require grids centered on the origin")


def _axis_forward(x: np.ndarray, dt: float, axis: int) -> np.ndarray:
    """One axis of the centered transform: exact for n divisible by 4."""
    n = x.shape[axis]
    shape = [1, 1]
    shape[axis] = n
    mod = ((-1.0) ** np.arange(n)).reshape(shape)
    y = np.fft.ifft(x * mod, axis=axis) * n
    return mod * y * dt / math.sqrt(2.0 * math.pi)


def _axis_inverse(x: np.ndarray, d_omega: float, axis: int) -> np.ndarray:
    n = x.shape[axis]
    shape = [1, 1]
    shape[axis] = n
    mod = ((-1.0) ** np.arange(n)).reshape(shape)
    y = np.fft.fft(x * mod, axis=axis)
    return mod * y * d_omega / math.sqrt(2.0 * math.pi)


def jta_to_jsa(matrix: JointAmplitudeMatrix,
               sgrid_s: SpectralGrid | None = None,
               sgrid_i: SpectralGrid | None = None) -> JointAmplitudeMatrix:
    """Unitary 2-D transform of a time-domain amplitude to detuning space."""
    if matrix.domain_tag != "time":
        raise ConfigError("forward transform expects a time-domain amplitude")
    _require_centered(matrix.grid_s)
    _require_centered(matrix.grid_i)
    want_s = SpectralGrid.conjugate_to(matrix.grid_s)
    want_i = SpectralGrid.conjugate_to(matrix.grid_i)
    for given, want, name in ((sgrid_s, want_s, "signal"), (sgrid_i, want_i, "idler")):
        if given is not None and (given.n_points != want.n_points
                                  or not math.isclose(given.d_omega, want.d_omega,
                                                      rel_tol=1e-12)):
            raise ConfigError(f"{name} spectral grid is not conjugate to the time grid")
    out = _axis_forward(_axis_forward(matrix.values, matrix.grid_s.dt, 0),
                        matrix.grid_i.dt, 1)
    return JointAmplitudeMatrix(sgrid_s or want_s, sgrid_i or want_i, out,
                                domain_tag="frequency")


def jsa_to_jta(matrix: JointAmplitudeMatrix,
               tgrid_s: TemporalGrid | None = None,
               tgrid_i: TemporalGrid | None = None) -> JointAmplitudeMatrix:
    """Inverse of :func:`jta_to_jsa`."""
    if matrix.domain_tag != "frequency":
        raise ConfigError("inverse transform expects a frequency-domain amplitude")

    def _tgrid(sgrid: SpectralGrid) -> TemporalGrid:
        return TemporalGrid(n_points=sgrid.n_points,
                            dt=2.0 * math.pi / (sgrid.n_points * sgrid.d_omega))

    want_s = _tgrid(matrix.grid_s)
    want_i = _tgrid(matrix.grid_i)
    for given, want, name in ((tgrid_s, want_s, "signal"), (tgrid_i, want_i, "idler")):
        if given is not None and (given.n_points != want.n_points
                                  or not math.isclose(given.dt, want.dt, rel_tol=1e-12)):
            raise ConfigError(f"{name} time grid is not conjugate to the spectral grid")
    out = _axis_inverse(_axis_inverse(matrix.values, matrix.grid_s.d_omega, 0),
                        matrix.grid_i.d_omega, 1)
    return JointAmplitudeMatrix(tgrid_s or want_s, tgrid_i or want_i, out,
                                domain_tag="time")


def jsa_linear_gaussian(pulse: PumpPulse, wg: Waveguide, filters: FilterPair,
                        sgrid: SpectralGrid) -> JointAmplitudeMatrix:
    """Closed-form filtered two-frequency amplitude for the weak-pump tier.

    Energy conservation shows up as the exp(-((d_s+d_i)/2)^2 / (2 sigma_w^2))
    ridge along d_s + d_i = 0.
    """
    _gaussian_ratios_or_raise(pulse, filters)
    sw = pulse.sigma_w
    phi = wg.gamma * wg.length * pulse.P0
    ds = sgrid.omega[:, None]
    di = sgrid.omega[None, :]
    sfs = filters.signal.sigma_f
    sfi = filters.idler.sigma_f
    pref = 1j * phi / 2.0 / (math.sqrt(2.0 * math.pi) * sw)
    values = pref * np.exp(-((ds + di) / 2.0) ** 2 / (2.0 * sw ** 2)
                           - ds ** 2 / (4.0 * sfs ** 2)
                           - di ** 2 / (4.0 * sfi ** 2))
    return JointAmplitudeMatrix(sgrid, sgrid, values, domain_tag="frequency")


def jsa_linear_unfiltered(pulse: PumpPulse, wg: Waveguide,
                          sgrid: SpectralGrid) -> JointAmplitudeMatrix:
    """Unfiltered weak-pump two-frequency amplitude: a pure energy ridge."""
    sw = pulse.sigma_w
    phi = wg.gamma * wg.length * pulse.P0
    ds = sgrid.omega[:, None]
    di = sgrid.omega[None, :]
    pref = 1j * phi / 2.0 / (math.sqrt(2.0 * math.pi) * sw)
    values = pref * np.exp(-((ds + di) / 2.0) ** 2 / (2.0 * sw ** 2))
    return JointAmplitudeMatrix(sgrid, sgrid, values, domain_tag="frequency")


def marginal_spectrum(jsa: JointAmplitudeMatrix, axis: str = "signal") -> np.ndarray:
    """Marginal intensity of |JSA|^2 along one frequency axis (trapezoid rule)."""
    if jsa.domain_tag != "frequency":
        raise ConfigError("marginal spectra are defined on frequency-domain amplitudes")
    intensity = np.abs(jsa.values) ** 2
    if axis == "signal":
        return intensity @ jsa.grid_i.trapezoid_weights
    if axis == "idler":
        return jsa.grid_s.trapezoid_weights @ intensity
    raise ConfigError(f"axis must be 'signal' or 'idler', got {axis!r}")
