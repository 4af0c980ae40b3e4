"""Optical Bloch equations of the driven two-level system.

The state vector is ordered (rho_ee, rho_gg, rho_ge, rho_eg).  Besides
physical density matrices the same linear evolution is applied to
regression-seeded matrices, so no trace/hermiticity is assumed anywhere.
"""

from __future__ import annotations

import numpy as np

from .params import PhysicsParams, SimGrid

RHO_EE, RHO_GG, RHO_GE, RHO_EG = 0, 1, 2, 3

#: Initial condition used throughout: emitter prepared in the excited state.
EXCITED_STATE = np.array([1.0, 0.0, 0.0, 0.0], dtype=np.complex128)


def bloch_generator(delta: float, omega_x: float, params: PhysicsParams) -> np.ndarray:
    """4x4 generator M with d/dt (rho_ee, rho_gg, rho_ge, rho_eg) = M @ rho."""
    g = params.gamma
    h = 0.5j * omega_x
    return np.array(
        [
            [-g, 0.0, -h, h],
            [g, 0.0, h, -h],
            [-h, h, 1j * delta - g / 2, 0.0],
            [h, -h, 0.0, -1j * delta - g / 2],
        ],
        dtype=np.complex128,
    )


def step_rk4(state: np.ndarray, generator: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step with the generator held constant.

    For a constant generator this equals the 4th-order Taylor expansion of
    the matrix exponential, which is what :func:`transfer_matrices` builds.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    k1 = generator @ state
    k2 = generator @ (state + 0.5 * dt * k1)
    k3 = generator @ (state + 0.5 * dt * k2)
    k4 = generator @ (state + dt * k3)
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def slice_generators(
    grid: SimGrid, detuning_trace: np.ndarray, params: PhysicsParams
) -> np.ndarray:
    """Per-slice generators, shape (n_steps, 4, 4)."""
    detuning_trace = np.asarray(detuning_trace, dtype=float)
    if detuning_trace.shape != (grid.n_steps,):
        raise ValueError(
            f"detuning trace has length {detuning_trace.shape}, "
            f"expected ({grid.n_steps},)"
        )
    n = grid.n_steps
    g = params.gamma
    h = 0.5j * grid.omega_x()
    d = detuning_trace
    m = np.zeros((n, 4, 4), dtype=np.complex128)
    m[:, 0, 0] = -g
    m[:, 0, 2] = -h
    m[:, 0, 3] = h
    m[:, 1, 0] = g
    m[:, 1, 2] = h
    m[:, 1, 3] = -h
    m[:, 2, 0] = -h
    m[:, 2, 1] = h
    m[:, 2, 2] = 1j * d - g / 2
    m[:, 3, 0] = h
    m[:, 3, 1] = -h
    m[:, 3, 3] = -1j * d - g / 2
    return m


def transfer_matrices(
    grid: SimGrid, detuning_trace: np.ndarray, params: PhysicsParams
) -> np.ndarray:
    """One-step RK4 transfer matrix per slice, shape (n_steps, 4, 4).

    T_k = I + A + A^2/2 + A^3/6 + A^4/24 with A = dt * M_k, evaluated in
    Horner form.  Applying T_k is bit-for-bit the same linear map for every
    seed, which keeps the regression sweep deterministic.
    """
    a = grid.dt * slice_generators(grid, detuning_trace, params)
    eye = np.eye(4, dtype=np.complex128)
    t = eye + a / 4.0
    t = eye + (a @ t) / 3.0
    t = eye + (a @ t) / 2.0
    t = eye + a @ t
    return t


def propagate(
    state: np.ndarray,
    grid: SimGrid,
    detuning_trace: np.ndarray,
    params: PhysicsParams,
) -> np.ndarray:
    """Evolve ``state`` over the full grid; returns shape (n_steps + 1, 4).

    Row k is the state at slice boundary k; row 0 is the input.  The end of
    each slice seeds the next, with the drive on only inside the pulse
    windows of the grid schedule.
    """
    state = np.asarray(state, dtype=np.complex128)
    if state.shape != (4,):
        raise ValueError(f"state must have shape (4,), got {state.shape}")
    transfer = transfer_matrices(grid, detuning_trace, params)
    return propagate_with_transfer(state, transfer)


def propagate_with_transfer(state: np.ndarray, transfer: np.ndarray) -> np.ndarray:
    """Cumulative application of precomputed per-slice transfer matrices."""
    n = transfer.shape[0]
    traj = np.empty((n + 1, 4), dtype=np.complex128)
    traj[0] = state
    for k in range(n):
        traj[k + 1] = transfer[k] @ traj[k]
    return traj
