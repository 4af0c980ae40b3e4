"""Quantum-regression machinery: seeds, trajectories, two-time correlators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bloch import (
    EXCITED_STATE,
    RHO_EE,
    RHO_EG,
    RHO_GE,
    RHO_GG,
    propagate_with_transfer,
    transfer_matrices,
)
from .noise import ou_trace
from .params import NoiseProcess, PhysicsParams, PulseSequence, SimGrid, make_grid


def seed_sigma_minus_rho(rho: np.ndarray) -> np.ndarray:
    """sigma_- rho in state-vector layout; accepts (..., 4) arrays.

    Nonzero entries: (sigma_- rho)_ge = rho_ee, (sigma_- rho)_gg = rho_eg.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    out[..., RHO_GE] = rho[..., RHO_EE]
    out[..., RHO_GG] = rho[..., RHO_EG]
    return out


def seed_rho_sigma_plus(rho: np.ndarray) -> np.ndarray:
    """rho sigma_+: (rho sigma_+)_eg = rho_ee, (rho sigma_+)_gg = rho_ge."""
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    out[..., RHO_EG] = rho[..., RHO_EE]
    out[..., RHO_GG] = rho[..., RHO_GE]
    return out


def seed_sigma_minus_rho_sigma_plus(rho: np.ndarray) -> np.ndarray:
    """sigma_- rho sigma_+: single entry (.)_gg = rho_ee."""
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    out[..., RHO_GG] = rho[..., RHO_EE]
    return out


@dataclass(frozen=True)
class CorrelationAccumulator:
    """Lag-indexed accumulation C(theta) = sum_{t <= T - theta} g(t, theta) dt."""

    theta_grid: np.ndarray
    c_of_theta: np.ndarray


@dataclass(frozen=True)
class EmitterConfig:
    """Everything needed to simulate one emitter realization."""

    physics: PhysicsParams
    pulses: PulseSequence | None
    noise: NoiseProcess
    total_time: float | None = None
    n_slices_per_period: int | None = None
    dt: float | None = None

    def build_grid(self) -> SimGrid:
        tau_c = self.noise.tau_c if self.noise.sigma > 0 else None
        return make_grid(
            pulses=self.pulses,
            total_time=self.total_time,
            n_slices_per_period=self.n_slices_per_period,
            dt=self.dt,
            tau_c=tau_c,
        )


def simulate_trajectory(
    cfg: EmitterConfig, stream: int = 0
) -> tuple[SimGrid, np.ndarray, np.ndarray, np.ndarray]:
    """Draw one noise realization and propagate the excited initial state.

    Returns (grid, detuning trace, per-slice transfer matrices, trajectory).
    """
    grid = cfg.build_grid()
    trace = ou_trace(cfg.noise, grid.dt, grid.n_steps, stream=stream)
    transfer = transfer_matrices(grid, trace, cfg.physics)
    traj = propagate_with_transfer(EXCITED_STATE, transfer)
    return grid, trace, transfer, traj


def two_time_correlation(
    initial: np.ndarray,
    grid: SimGrid,
    detuning_trace: np.ndarray,
    params: PhysicsParams,
) -> CorrelationAccumulator:
    """C(theta_j) = sum_i <sigma_+(t_i + theta_j) sigma_-(t_i)> dt over i + j <= N.

    Each start time seeds rho' = sigma_- rho(t_i), evolves it under the same
    schedule and noise realization, and reads Tr[rho' sigma_+] = rho'_ge.
    The sweep streams through the triangular domain; nothing quadratic in N
    is materialized.
    """
    transfer = transfer_matrices(grid, detuning_trace, params)
    traj = propagate_with_transfer(np.asarray(initial, dtype=np.complex128), transfer)
    return correlation_from_transfer(grid, transfer, traj)


def correlation_from_transfer(
    grid: SimGrid, transfer: np.ndarray, traj: np.ndarray
) -> CorrelationAccumulator:
    seeds = seed_sigma_minus_rho(traj)
    c = _kernels.accumulate_correlation(transfer, seeds, RHO_GE) * grid.dt
    return CorrelationAccumulator(theta_grid=grid.times(), c_of_theta=c)
