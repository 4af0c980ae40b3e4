import math

import numpy as np
import pytest

from pulsedspec.noise import (
    noise_stats,
    ou_coefficients,
    ou_trace,
    static_sample,
)
from pulsedspec.params import NoiseProcess


def make_process(**kw):
    defaults = dict(delta0=4.0, sigma=4.0, tau_c=0.03, seed=31415)
    defaults.update(kw)
    return NoiseProcess(**defaults)


def test_one_step_coefficients_closed_form():
    for sigma, tau_c, dt in [(4.0, 0.03, 1e-3), (1.5, 2.0, 0.1), (7.0, 0.5, 0.5)]:
        phi, scale = ou_coefficients(sigma, tau_c, dt)
        assert abs(phi - math.exp(-dt / tau_c)) < 1e-12
        assert abs(scale - sigma * math.sqrt(1 - math.exp(-2 * dt / tau_c))) < 1e-12
        # conditional variance of the exact update
        assert abs(scale**2 - sigma**2 * (1 - phi**2)) < 1e-12


def test_recursion_matches_direct_loop():
    proc = make_process()
    trace = ou_trace(proc, 1e-3, 500)
    phi, scale = ou_coefficients(proc.sigma, proc.tau_c, 1e-3)
    rng = np.random.default_rng([proc.seed, 0])
    x = proc.delta0 + proc.sigma * rng.standard_normal()
    assert trace[0] == x
    for k in range(1, 500):
        x = proc.delta0 + phi * (x - proc.delta0) + scale * rng.standard_normal()
        assert abs(trace[k] - x) < 1e-12


def test_zero_sigma_gives_constant_trace():
    proc = make_process(sigma=0.0)
    assert np.array_equal(ou_trace(proc, 1e-3, 100), np.full(100, 4.0))


def test_frozen_noise_limit():
    proc = make_process(tau_c=1e9)
    trace = ou_trace(proc, 1e-3, 10_000)
    assert np.abs(trace - trace[0]).max() < 1e-3 * proc.sigma


def test_trace_is_deterministic_and_stream_dependent():
    proc = make_process()
    a = ou_trace(proc, 1e-3, 1000)
    b = ou_trace(proc, 1e-3, 1000)
    assert np.array_equal(a, b)
    c = ou_trace(proc, 1e-3, 1000, stream=1)
    assert not np.array_equal(a, c)


def test_ou_moments_and_autocorrelation_time():
    proc = make_process()
    n = 10**6
    dt = 1e-3
    trace = ou_trace(proc, dt, n)
    n_eff = n * dt / (2 * proc.tau_c)
    assert abs(trace.mean() - 4.0) < 3 * 4.0 / math.sqrt(n_eff)
    assert abs(trace.std() - 4.0) < 0.02 * 4.0
    stats = noise_stats(trace, dt)
    assert stats.converged
    assert abs(stats.tau_fit - 0.03) < 0.1 * 0.03


def test_stationarity_first_half_vs_second_half():
    proc = make_process(seed=7)
    trace = ou_trace(proc, 1e-3, 10**6)
    half = trace.size // 2
    a, b = trace[:half], trace[half:]
    n_eff = half * 1e-3 / (2 * proc.tau_c)
    tol = 4 * proc.sigma / math.sqrt(n_eff)
    assert abs(a.mean() - b.mean()) < tol
    assert abs(a.std() - b.std()) < 0.03 * proc.sigma


def test_ou_trace_rejects_bad_arguments():
    proc = make_process()
    with pytest.raises(ValueError):
        ou_trace(proc, 1e-3, 0)
    with pytest.raises(ValueError):
        ou_trace(proc, 0.0, 10)


def test_static_sample_moments_and_determinism():
    assert np.array_equal(static_sample(2.5, 0.0, 1, 3), [2.5, 2.5, 2.5])
    a = static_sample(0.0, 15.0, 42, 10**5)
    b = static_sample(0.0, 15.0, 42, 10**5)
    assert np.array_equal(a, b)
    assert abs(a.std() - 15.0) < 0.02 * 15.0
    assert abs(a.mean()) < 3 * 15.0 / math.sqrt(10**5)


def test_noise_stats_degenerate_and_white_limits():
    flagged = noise_stats(np.full(200, 3.0), 1e-3)
    assert flagged.mean == pytest.approx(3.0)
    assert flagged.std == 0.0
    assert not flagged.converged

    rng = np.random.default_rng(9)
    white = rng.normal(size=10**5)
    stats = noise_stats(white, 1e-3)
    assert stats.tau_fit <= 1e-3  # resolution floor

    with pytest.raises(ValueError):
        noise_stats(np.zeros(50), 1e-3)
