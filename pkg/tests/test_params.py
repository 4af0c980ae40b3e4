import math

import numpy as np
import pytest

from pulsedspec.params import (
    NoiseProcess,
    PhysicsParams,
    PulseSequence,
    make_grid,
)


def test_gamma_must_be_positive():
    with pytest.raises(ValueError):
        PhysicsParams(gamma=0.0)
    with pytest.raises(ValueError):
        PhysicsParams(gamma=-1.0)


def test_pulse_width_is_exact_pi_rotation():
    seq = PulseSequence(tau=0.3, omega=35.0, n_pulses=8)
    assert seq.omega * seq.t_pi == pytest.approx(math.pi, abs=1e-15)
    assert seq.total_time == pytest.approx(2.4)


def test_pulse_must_fit_inside_period():
    # Omega = 10, tau = 0.3 gives t_pi = 0.314 > tau
    with pytest.raises(ValueError, match="does not fit"):
        PulseSequence(tau=0.3, omega=10.0, n_pulses=1)


def test_noise_process_invariants():
    with pytest.raises(ValueError):
        NoiseProcess(delta0=0.0, sigma=-1.0, tau_c=0.03, seed=1)
    with pytest.raises(ValueError):
        NoiseProcess(delta0=0.0, sigma=1.0, tau_c=0.0, seed=1)


def test_grid_pulse_window_alignment():
    seq = PulseSequence(tau=0.3, omega=35.0, n_pulses=4)
    grid = make_grid(seq, n_slices_per_period=100)
    assert grid.dt == pytest.approx(0.003)
    assert grid.n_steps == 400
    # window rounded to whole slices, drive re-adjusted to an exact pi area
    n_on = int(grid.pulse_on[:100].sum())
    assert grid.omega_eff * n_on * grid.dt == pytest.approx(math.pi, rel=1e-12)
    # free evolution first, pulse at the end of each period
    assert not grid.pulse_on[0]
    assert grid.pulse_on[99]
    assert np.array_equal(grid.pulse_on[:100], grid.pulse_on[100:200])


def test_grid_rejects_coarse_slicing():
    seq = PulseSequence(tau=0.3, omega=35.0, n_pulses=2)
    # fewer than 20 slices inside the pulse window
    with pytest.raises(ValueError, match="too coarse"):
        make_grid(seq, n_slices_per_period=40)
    # noise correlation time not resolved
    with pytest.raises(ValueError, match="too coarse"):
        make_grid(seq, n_slices_per_period=100, tau_c=0.003)
    with pytest.raises(ValueError, match="too coarse"):
        make_grid(total_time=1.0, dt=0.01, tau_c=0.003)


def test_grid_default_resolution_tightens_with_constraints():
    seq = PulseSequence(tau=0.3, omega=35.0, n_pulses=1)
    assert make_grid(seq).n_slices_per_period == 300
    # tau_c = 1e-4 forces 3 * tau / tau_c = 9000 slices
    assert make_grid(seq, tau_c=1e-4).n_slices_per_period == 9000


def test_grid_total_time_consistency():
    seq = PulseSequence(tau=0.3, omega=35.0, n_pulses=8)
    make_grid(seq, total_time=2.4, n_slices_per_period=100)
    with pytest.raises(ValueError, match="contradicts"):
        make_grid(seq, total_time=2.0, n_slices_per_period=100)


def test_free_grid():
    grid = make_grid(total_time=3.0, dt=1e-3)
    assert grid.n_steps == 3000
    assert not grid.pulse_on.any()
    assert grid.times()[-1] == pytest.approx(3.0)
    with pytest.raises(ValueError):
        make_grid(total_time=3.0)
