import numpy as np
import pytest

from pulsedspec.bloch import EXCITED_STATE
from pulsedspec.correlation import (
    CorrelationAccumulator,
    EmitterConfig,
    two_time_correlation,
)
from pulsedspec.params import NoiseProcess, PhysicsParams, PulseSequence, make_grid
from pulsedspec.spectrum import (
    DegenerateSpectrumError,
    Spectrum,
    averaged_spectrum,
    default_omega_grid,
    emission_spectrum,
    find_peaks,
    peak_fwhm,
    single_spectrum,
    spectral_weight,
)


def free_spectrum(params, delta=0.0, total_time=12.0, dt=2e-3, omega=None):
    grid = make_grid(total_time=total_time, dt=dt)
    trace = np.full(grid.n_steps, delta)
    corr = two_time_correlation(EXCITED_STATE, grid, trace, params)
    if omega is None:
        omega = default_omega_grid(-20 + delta, 20 + delta, 0.02)
    return emission_spectrum(corr, omega)


def test_free_emitter_lorentzian(params):
    # long window: P(omega) must converge to a Lorentzian of half width gamma/2
    spec = free_spectrum(params)
    lorentz = 1.0 / (spec.omega_grid**2 + 1.0)
    scaled = lorentz * spec.p.max() / lorentz.max()
    assert np.abs(spec.p - scaled).max() < 0.02 * spec.p.max()
    assert peak_fwhm(spec) == pytest.approx(2.0, rel=0.02)


def test_static_detuning_shifts_the_line(params):
    spec = free_spectrum(params, delta=3.0)
    peak = max(find_peaks(spec, 0.5), key=lambda p: p[1])
    assert peak[0] == pytest.approx(3.0, abs=0.05)
    assert peak_fwhm(spec, center=3.0) == pytest.approx(2.0, rel=0.02)


def test_dft_matches_slow_reference(params, rng):
    theta = 5e-3 * np.arange(200)
    c = rng.normal(size=200) + 1j * rng.normal(size=200)
    omega = np.linspace(-7.0, 11.0, 57)
    spec = emission_spectrum(CorrelationAccumulator(theta, c), omega)
    slow = np.array(
        [2.0 * np.sum(c * np.exp(-1j * w * theta)).real * 5e-3 for w in omega]
    )
    assert np.abs(spec.p - slow).max() < 1e-10


def test_parseval_identity(params):
    # integral of P over omega / (2 pi) recovers C(0); the one-sided 2 Re sum
    # counts the theta = 0 sample twice, adding C(0) dt W / pi over [-W, W]
    grid = make_grid(total_time=8.0, dt=1e-3)
    trace = np.zeros(grid.n_steps)
    corr = two_time_correlation(EXCITED_STATE, grid, trace, params)
    w_max = 300.0
    omega = default_omega_grid(-w_max, w_max, 0.05)
    spec = emission_spectrum(corr, omega)
    total = np.trapezoid(spec.p, omega) / (2 * np.pi)
    c0 = corr.c_of_theta[0].real
    assert total == pytest.approx(c0 * (1 + grid.dt * w_max / np.pi), rel=5e-3)


def test_spectrum_symmetry_at_zero_detuning(params):
    spec = free_spectrum(params, omega=default_omega_grid(-20, 20, 0.02))
    assert np.abs(spec.p - spec.p[::-1]).max() < 1e-10 * spec.p.max()
    assert spec.p.min() > -1e-6 * spec.p.max()


def test_spectral_weight_basics(params):
    spec = free_spectrum(params)
    assert spectral_weight(spec, (-20, 20)) == pytest.approx(1.0)
    # Lorentzian of unit half width carries half its weight in |omega| <= 1
    assert spectral_weight(spec, (-1, 1)) == pytest.approx(0.5, abs=0.02)
    assert spectral_weight(spec, (5, 5.001)) == 0.0
    with pytest.raises(ValueError):
        spectral_weight(spec, (2, 1))
    with pytest.raises(DegenerateSpectrumError):
        spectral_weight(Spectrum(spec.omega_grid, np.zeros_like(spec.p)), (-1, 1))


def test_find_peaks_two_gaussians():
    w = np.linspace(-10, 10, 2001)
    p = np.exp(-((w - 4.0) ** 2) / 0.5) + 0.6 * np.exp(-((w + 2.0) ** 2) / 0.5)
    peaks = find_peaks(Spectrum(w, p), min_prominence=0.1)
    assert len(peaks) == 2
    assert peaks[0][0] == pytest.approx(4.0, abs=0.02)
    assert peaks[1][0] == pytest.approx(-2.0, abs=0.02)
    assert find_peaks(Spectrum(w, np.zeros_like(w)), 0.1) == []


def test_peak_fwhm_interpolates():
    w = np.linspace(-10, 10, 801)
    p = 1.0 / (((w - 1.0) / 1.7) ** 2 + 1.0)
    assert peak_fwhm(Spectrum(w, p), center=0.0) == pytest.approx(3.4, rel=1e-3)


def test_emission_spectrum_rejects_bad_grid(params, rng):
    corr = CorrelationAccumulator(1e-3 * np.arange(10), np.ones(10, dtype=complex))
    with pytest.raises(ValueError):
        emission_spectrum(corr, np.array([0.0]))
    with pytest.raises(ValueError):
        emission_spectrum(corr, np.array([1.0, 0.5, 2.0]))


def pulsed_config(seed=2024, sigma=4.0):
    return EmitterConfig(
        physics=PhysicsParams(),
        pulses=PulseSequence(tau=0.3, omega=35.0, n_pulses=4),
        noise=NoiseProcess(delta0=3.0, sigma=sigma, tau_c=0.03, seed=seed),
        n_slices_per_period=100,
    )


def test_averaged_spectrum_trivial_cases(params):
    omega = default_omega_grid(-15, 15, 0.1)
    cfg = pulsed_config(sigma=0.0)
    single = single_spectrum(cfg, omega)
    avg = averaged_spectrum(cfg, omega, n_realizations=3)
    # noiseless realizations are identical, averaging is a no-op
    assert np.abs(avg.p - single.p).max() < 1e-12
    assert avg.metadata["n_realizations"] == 3
    with pytest.raises(ValueError):
        averaged_spectrum(cfg, omega, n_realizations=0)


def test_averaged_spectrum_deterministic_and_worker_invariant():
    omega = default_omega_grid(-15, 15, 0.1)
    cfg = pulsed_config()
    serial = averaged_spectrum(cfg, omega, n_realizations=4, workers=1)
    again = averaged_spectrum(cfg, omega, n_realizations=4, workers=1)
    parallel = averaged_spectrum(cfg, omega, n_realizations=4, workers=2)
    assert np.array_equal(serial.p, again.p)
    assert np.array_equal(serial.p, parallel.p)


def test_averaged_spectrum_base_seed_override():
    omega = default_omega_grid(-15, 15, 0.1)
    cfg = pulsed_config(seed=1)
    a = averaged_spectrum(cfg, omega, n_realizations=2, base_seed=77)
    b = averaged_spectrum(pulsed_config(seed=77), omega, n_realizations=2)
    assert np.array_equal(a.p, b.p)
    assert a.metadata["base_seed"] == 77
