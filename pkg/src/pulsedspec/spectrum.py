"""Emission spectrum of a single emitter under the pulse protocol."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.signal

from .correlation import (
    CorrelationAccumulator,
    EmitterConfig,
    correlation_from_transfer,
    simulate_trajectory,
)


class DegenerateSpectrumError(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    omega_grid: np.ndarray
    p: np.ndarray
    metadata: dict = field(default_factory=dict)


def default_omega_grid(
    lo: float = -40.0, hi: float = 40.0, step: float = 0.05
) -> np.ndarray:
    # wide enough for the +-pi/tau satellites of all typical pulse periods
    n = round((hi - lo) / step)
    return lo + step * np.arange(n + 1)


def emission_spectrum(
    corr: CorrelationAccumulator, omega_grid: np.ndarray, metadata: dict | None = None
) -> Spectrum:
    """P(omega) = 2 Re{ sum_j C(theta_j) exp(-i omega theta_j) dt }.

    Direct DFT onto the requested grid (chunked over omega to bound memory);
    the overall amplitude constant is taken as 1, spectra are compared in
    relative terms only.
    """
    omega_grid = np.asarray(omega_grid, dtype=float)
    if omega_grid.ndim != 1 or omega_grid.size < 2 or np.any(np.diff(omega_grid) <= 0):
        raise ValueError("omega_grid must be strictly increasing with >= 2 points")
    theta = corr.theta_grid
    dt = theta[1] - theta[0]
    p = np.empty(omega_grid.size)
    for lo in range(0, omega_grid.size, 512):
        block = omega_grid[lo : lo + 512]
        phase = np.exp(-1j * np.outer(block, theta))
        p[lo : lo + 512] = 2.0 * (phase @ corr.c_of_theta).real * dt
    return Spectrum(omega_grid=omega_grid, p=p, metadata=metadata or {})


def spectral_weight(spec: Spectrum, window: tuple[float, float]) -> float:
    """Fraction of the trapezoid-integrated spectrum inside [lo, hi]."""
    lo, hi = window
    if hi < lo:
        raise ValueError(f"empty window ({lo}, {hi})")
    total = np.trapezoid(spec.p, spec.omega_grid)
    if not total > 0:
        raise DegenerateSpectrumError("spectrum does not integrate to a positive total")
    mask = (spec.omega_grid >= lo) & (spec.omega_grid <= hi)
    if mask.sum() < 2:
        return 0.0
    part = np.trapezoid(spec.p[mask], spec.omega_grid[mask])
    return float(part / total)


def find_peaks(spec: Spectrum, min_prominence: float) -> list[tuple[float, float]]:
    """Local maxima with prominence >= min_prominence * max(p), height-sorted."""
    pmax = spec.p.max()
    if not pmax > 0:
        return []
    idx, _ = scipy.signal.find_peaks(spec.p, prominence=min_prominence * pmax)
    peaks = [(float(spec.omega_grid[i]), float(spec.p[i])) for i in idx]
    peaks.sort(key=lambda pair: -pair[1])
    return peaks


def peak_fwhm(spec: Spectrum, center: float = 0.0) -> float:
    """Full width at half maximum of the peak nearest ``center``.

    Walks outward from the peak to the first half-height crossings and
    interpolates linearly between grid points.
    """
    w, p = spec.omega_grid, spec.p
    i0 = int(np.argmin(np.abs(w - center)))
    # climb to the local maximum around the requested center
    while 0 < i0 < p.size - 1:
        if p[i0 + 1] > p[i0]:
            i0 += 1
        elif p[i0 - 1] > p[i0]:
            i0 -= 1
        else:
            break
    half = p[i0] / 2.0
    if not half > 0:
        raise DegenerateSpectrumError("peak height is not positive")

    def cross(direction: int) -> float:
        i = i0
        while 0 <= i + direction < p.size and p[i + direction] > half:
            i += direction
        j = i + direction
        if j < 0 or j >= p.size:
            return w[i]
        frac = (p[i] - half) / (p[i] - p[j])
        return w[i] + frac * (w[j] - w[i])

    return float(cross(+1) - cross(-1))


def single_spectrum(
    cfg: EmitterConfig, omega_grid: np.ndarray, stream: int = 0
) -> Spectrum:
    """Spectrum of one noise realization (stream index selects the draw)."""
    grid, _, transfer, traj = simulate_trajectory(cfg, stream=stream)
    corr = correlation_from_transfer(grid, transfer, traj)
    return emission_spectrum(corr, omega_grid, metadata={"stream": stream})


def _realization_worker(args) -> np.ndarray:
    cfg, omega_grid, stream = args
    return single_spectrum(cfg, omega_grid, stream=stream).p


def averaged_spectrum(
    cfg: EmitterConfig,
    omega_grid: np.ndarray,
    n_realizations: int,
    base_seed: int | None = None,
    workers: int = 1,
) -> Spectrum:
    """Arithmetic mean over noise realizations; realization k uses stream k.

    Results are indexed by realization before the (pairwise) mean, so the
    outcome is identical for any worker count or completion order.
    """
    if n_realizations < 1:
        raise ValueError(f"n_realizations must be >= 1, got {n_realizations}")
    if base_seed is not None:
        cfg = replace(cfg, noise=replace(cfg.noise, seed=base_seed))
    omega_grid = np.asarray(omega_grid, dtype=float)
    jobs = [(cfg, omega_grid, k) for k in range(n_realizations)]
    if workers > 1 and n_realizations > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_realization_worker, jobs, chunksize=1))
    else:
        rows = [_realization_worker(job) for job in jobs]
    p = np.mean(np.stack(rows), axis=0)
    meta = {
        "n_realizations": n_realizations,
        "base_seed": cfg.noise.seed,
        "workers": workers,
    }
    return Spectrum(omega_grid=omega_grid, p=p, metadata=meta)
