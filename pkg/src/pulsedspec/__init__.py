"""Pulse-controlled quantum emitter spectra in noisy environments.

Simulates a two-level emitter with stochastically drifting detuning under a
periodic sequence of finite-width pi pulses: single-emitter emission
spectra, two-emitter Hong-Ou-Mandel cross-correlation, and
inhomogeneous-ensemble spectra.
"""

__version__ = "0.1.0"

from .bloch import EXCITED_STATE, bloch_generator, propagate, step_rk4
from .correlation import (
    CorrelationAccumulator,
    EmitterConfig,
    seed_rho_sigma_plus,
    seed_sigma_minus_rho,
    seed_sigma_minus_rho_sigma_plus,
    two_time_correlation,
)
from .ensemble import EnsembleSpec, ensemble_spectrum, rescale_to_match_peak
from .noise import NoiseStats, noise_stats, ou_trace, static_sample
from .params import (
    NoiseProcess,
    PhysicsParams,
    PulseSequence,
    SimGrid,
    make_grid,
)
from .spectrum import (
    Spectrum,
    averaged_spectrum,
    default_omega_grid,
    emission_spectrum,
    find_peaks,
    peak_fwhm,
    single_spectrum,
    spectral_weight,
)
from .tpi import (
    EmitterCorrelators,
    TpiCurve,
    averaged_hom,
    emitter_correlators,
    find_zeros,
    hom_cross_correlation,
)

__all__ = [
    "EXCITED_STATE",
    "CorrelationAccumulator",
    "EmitterConfig",
    "EmitterCorrelators",
    "EnsembleSpec",
    "NoiseProcess",
    "NoiseStats",
    "PhysicsParams",
    "PulseSequence",
    "SimGrid",
    "Spectrum",
    "TpiCurve",
    "averaged_hom",
    "averaged_spectrum",
    "bloch_generator",
    "default_omega_grid",
    "emission_spectrum",
    "emitter_correlators",
    "ensemble_spectrum",
    "find_peaks",
    "find_zeros",
    "hom_cross_correlation",
    "make_grid",
    "noise_stats",
    "ou_trace",
    "peak_fwhm",
    "propagate",
    "rescale_to_match_peak",
    "seed_rho_sigma_plus",
    "seed_sigma_minus_rho",
    "seed_sigma_minus_rho_sigma_plus",
    "single_spectrum",
    "spectral_weight",
    "static_sample",
    "step_rk4",
    "two_time_correlation",
]
