"""Parameter records shared by all simulation modules.

Units follow the convention Gamma = 2, i.e. frequencies are measured in
units of half the spontaneous decay rate and times in its inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: Default number of time slices per pulse period (may be raised by the
#: resolution constraints in :func:`make_grid`).
DEFAULT_SLICES_PER_PERIOD = 300

#: Minimum number of slices inside the pulse window.
MIN_PULSE_SLICES = 20

#: Minimum number of slices per noise correlation time.
MIN_SLICES_PER_TAU_C = 3


@dataclass(frozen=True)
class PhysicsParams:
    """Fixed physical constants of the two-level emitter."""

    gamma: float = 2.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")


@dataclass(frozen=True)
class PulseSequence:
    """Periodic sequence of finite-width pi pulses.

    Each period of length ``tau`` consists of free evolution followed by a
    resonant drive of Rabi frequency ``omega`` applied for ``t_pi = pi/omega``
    so that every pulse is an exact pi_x rotation.
    """

    tau: float
    omega: float
    n_pulses: int

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.n_pulses < 1:
            raise ValueError(f"n_pulses must be >= 1, got {self.n_pulses}")
        if not self.t_pi < self.tau:
            raise ValueError(
                f"pulse width t_pi = pi/omega = {self.t_pi:.6g} does not fit "
                f"inside the period tau = {self.tau:.6g}"
            )

    @property
    def t_pi(self) -> float:
        return math.pi / self.omega

    @property
    def total_time(self) -> float:
        return self.n_pulses * self.tau


@dataclass(frozen=True)
class NoiseProcess:
    """Stationary Gaussian detuning noise (mean, spread, correlation time).

    ``sigma = 0`` degenerates to a constant detuning ``delta0``.
    """

    delta0: float
    sigma: float
    tau_c: float
    seed: int

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if not self.tau_c > 0:
            raise ValueError(f"tau_c must be positive, got {self.tau_c}")


@dataclass(frozen=True)
class SimGrid:
    """Uniform time grid with a per-slice drive schedule.

    ``pulse_on[k]`` marks slices during which the drive is applied with the
    (alignment-adjusted) amplitude ``omega_eff``; the detuning and drive are
    held constant within each slice.
    """

    dt: float
    n_slices_per_period: int
    n_periods: int
    pulse_on: np.ndarray = field(repr=False)
    omega_eff: float = 0.0

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if len(self.pulse_on) != self.n_steps:
            raise ValueError("pulse_on length does not match step count")

    @property
    def n_steps(self) -> int:
        return self.n_slices_per_period * self.n_periods

    @property
    def total_time(self) -> float:
        return self.n_steps * self.dt

    def times(self) -> np.ndarray:
        """Slice-boundary times, length ``n_steps + 1``."""
        return np.arange(self.n_steps + 1) * self.dt

    def omega_x(self) -> np.ndarray:
        """Per-slice drive amplitude."""
        return np.where(self.pulse_on, self.omega_eff, 0.0)


def make_grid(
    pulses: PulseSequence | None = None,
    total_time: float | None = None,
    n_slices_per_period: int | None = None,
    dt: float | None = None,
    tau_c: float | None = None,
) -> SimGrid:
    """Build a :class:`SimGrid` for a pulsed or freely evolving run.

    With ``pulses`` the slice width is ``tau / n_slices_per_period`` and the
    pulse window occupies the last slices of every period; the window width is
    rounded to whole slices and the drive amplitude re-adjusted so the area
    stays exactly pi.  Without ``pulses``, ``total_time`` and ``dt`` define a
    single drive-free stretch.

    ``tau_c``, when given, enforces ``dt <= tau_c / 3`` so the noise
    correlation is resolved.
    """
    if pulses is not None:
        if dt is not None:
            raise ValueError("with pulses, pass n_slices_per_period instead of dt")
        if total_time is not None and not math.isclose(
            total_time, pulses.total_time, rel_tol=1e-9, abs_tol=1e-12
        ):
            raise ValueError(
                f"total_time = {total_time:.6g} contradicts "
                f"n_pulses * tau = {pulses.total_time:.6g}"
            )
        min_nt = int(math.ceil(MIN_PULSE_SLICES * pulses.tau / pulses.t_pi))
        if tau_c is not None:
            min_nt = max(min_nt, int(math.ceil(MIN_SLICES_PER_TAU_C * pulses.tau / tau_c)))
        if n_slices_per_period is None:
            n_slices_per_period = max(DEFAULT_SLICES_PER_PERIOD, min_nt)
        elif n_slices_per_period < min_nt:
            raise ValueError(
                f"n_slices_per_period = {n_slices_per_period} too coarse: "
                f"need >= {min_nt} to resolve the pulse"
                + ("" if tau_c is None else " and the noise correlation time")
            )
        step = pulses.tau / n_slices_per_period
        n_on = max(1, round(pulses.t_pi / step))
        if n_on >= n_slices_per_period:
            raise ValueError("pulse window does not fit inside the period")
        period_pattern = np.zeros(n_slices_per_period, dtype=bool)
        period_pattern[n_slices_per_period - n_on :] = True
        schedule = np.tile(period_pattern, pulses.n_pulses)
        omega_eff = math.pi / (n_on * step)
        return SimGrid(
            dt=step,
            n_slices_per_period=n_slices_per_period,
            n_periods=pulses.n_pulses,
            pulse_on=schedule,
            omega_eff=omega_eff,
        )

    if total_time is None or dt is None:
        raise ValueError("without pulses, both total_time and dt are required")
    if not total_time > 0 or not dt > 0:
        raise ValueError("total_time and dt must be positive")
    if tau_c is not None and dt > tau_c / MIN_SLICES_PER_TAU_C:
        raise ValueError(
            f"dt = {dt:.6g} too coarse for tau_c = {tau_c:.6g} "
            f"(need dt <= tau_c/{MIN_SLICES_PER_TAU_C})"
        )
    n_steps = max(1, round(total_time / dt))
    step = total_time / n_steps
    return SimGrid(
        dt=step,
        n_slices_per_period=n_steps,
        n_periods=1,
        pulse_on=np.zeros(n_steps, dtype=bool),
        omega_eff=0.0,
    )
