"""Photon-pair generation by spontaneous four-wave mixing in a nonlinear
waveguide: joint temporal amplitudes under pump self- and cross-phase
modulation, Gaussian spectral filtering, and the resulting pair metrics.

Units throughout: time in ps, power in W, length in m, angular frequency in
rad/ps, and the nonlinear parameter gamma in 1/(W m).
"""

from .config import (MODEL_NAMES, RegimeCheckSpec, SimulationConfig,
                     config_from_dict, load_config, validate_config)
from .errors import (AccuracyError, AccuracyWarning, ConfigError,
                     CostGuardError, DegenerateInputError,
                     ModelCompatibilityError, SimulationError,
                     UndefinedEfficiencyError)
from .filtering import (DeltaMarker, FilterPair, FilterSpec,
                        JointAmplitudeMatrix, SeriesResult, filtered_jta,
                        filtered_jta_gaussian_series, filtered_jta_linear_gaussian,
                        gaussian_time_kernel, overlap, overlap_sampled,
                        time_kernel)
from .grids import TemporalGrid, build_temporal_grid
from .jta import (DiagonalJTA, jta_general, jta_linear, jta_simple, jta_sinc)
from .metrics import (LOW_EXCITATION_BOUND, PairMetrics, SchmidtDecomposition,
                      compute_pair_metrics, gaussian_eta, gaussian_nu,
                      gaussian_purity, heralding_efficiency, pair_probability,
                      purity_quadrature, purity_schmidt, schmidt_mode_count,
                      single_sided_eta, single_sided_purity,
                      validate_low_excitation)
from .pump import (Material, ModeProfile, PumpPulse, RegimeCheckResult,
                   Waveguide, check_free_carrier_regime, effective_area,
                   effective_length, nonlinear_parameter, nonlinear_phase,
                   phi_max, propagate_power, pump_power_profile)
from .spectral import (SpectralGrid, jsa_linear_gaussian, jsa_linear_unfiltered,
                       jsa_to_jta, jta_to_jsa, marginal_spectrum)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "AccuracyWarning", "ConfigError", "CostGuardError",
    "DegenerateInputError", "DeltaMarker", "DiagonalJTA", "FilterPair",
    "FilterSpec", "JointAmplitudeMatrix", "LOW_EXCITATION_BOUND",
    "MODEL_NAMES", "Material", "ModeProfile", "ModelCompatibilityError",
    "PairMetrics", "PumpPulse", "RegimeCheckResult", "RegimeCheckSpec",
    "SchmidtDecomposition", "SeriesResult", "SimulationConfig",
    "SimulationError", "SpectralGrid", "TemporalGrid",
    "UndefinedEfficiencyError", "Waveguide", "build_temporal_grid",
    "check_free_carrier_regime", "compute_pair_metrics", "config_from_dict",
    "effective_area", "effective_length", "filtered_jta",
    "filtered_jta_gaussian_series", "filtered_jta_linear_gaussian",
    "gaussian_eta", "gaussian_nu", "gaussian_purity", "gaussian_time_kernel",
    "heralding_efficiency", "jsa_linear_gaussian", "jsa_linear_unfiltered",
    "jsa_to_jta", "jta_general", "jta_linear", "jta_simple", "jta_sinc",
    "jta_to_jsa", "load_config", "marginal_spectrum", "nonlinear_parameter",
    "nonlinear_phase", "overlap", "overlap_sampled", "pair_probability",
    "phi_max", "propagate_power", "pump_power_profile", "purity_quadrature",
    "purity_schmidt", "schmidt_mode_count", "single_sided_eta",
    "single_sided_purity", "time_kernel", "validate_config",
    "validate_low_excitation",
]
