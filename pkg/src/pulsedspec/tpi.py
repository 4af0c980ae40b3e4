"""Hong-Ou-Mandel cross-correlation of two independently noisy emitters.

Both emitters feed a 50:50 beam splitter; the detector cross-correlation is
assembled from each emitter's population n(t), first-order coherence
g(t, theta) and intensity autocorrelation G2(t, theta), all obtained by
quantum regression under the shared pulse protocol.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .bloch import RHO_EE, RHO_EG
from .correlation import (
    EmitterConfig,
    seed_rho_sigma_plus,
    seed_sigma_minus_rho_sigma_plus,
    simulate_trajectory,
)


@dataclass(frozen=True)
class EmitterCorrelators:
    """Single-emitter inputs to the beam-splitter combination.

    ``g1[i, j]`` is <sigma_+(t_i) sigma_-(t_i + theta_j)> and
    ``g2auto[i, j]`` is the intensity autocorrelation, both zero outside the
    triangle i + j <= N.
    """

    dt: float
    n_of_t: np.ndarray
    g1: np.ndarray
    g2auto: np.ndarray


@dataclass(frozen=True)
class TpiCurve:
    theta_grid: np.ndarray
    g2_34: np.ndarray
    metadata: dict = field(default_factory=dict)


def emitter_correlators(cfg: EmitterConfig, stream: int = 0) -> EmitterCorrelators:
    """Correlators of one emitter realization.

    g(t, theta) seeds rho(t) sigma_+ and reads the eg entry; G2 seeds
    sigma_- rho(t) sigma_+ and reads the ee entry, which is exactly zero at
    theta = 0 (a two-level emitter never emits two photons at once).
    """
    grid, _, transfer, traj = simulate_trajectory(cfg, stream=stream)
    g1 = _kernels.correlation_field(transfer, seed_rho_sigma_plus(traj), RHO_EG)
    g2auto = _kernels.correlation_field(
        transfer, seed_sigma_minus_rho_sigma_plus(traj), RHO_EE
    ).real
    return EmitterCorrelators(
        dt=grid.dt, n_of_t=traj[:, RHO_EE].real, g1=g1, g2auto=g2auto
    )


def hom_cross_correlation(
    e1: EmitterCorrelators, e2: EmitterCorrelators, normalized: bool = False
) -> TpiCurve:
    """Integrated detector cross-correlation g2_34(theta).

    Per (t, theta) the 50:50 reduction for independent emitters is
    G2_34 = 1/4 [G2_1 + G2_2 + n1(t) n2(t+theta) + n2(t) n1(t+theta)
                 - 2 Re{g1 conj(g2)}],
    integrated over start times t <= T - theta.  ``normalized`` divides by
    the uncorrelated product term (the n1 n2 background integral).
    """
    if e1.g1.shape != e2.g1.shape or e1.dt != e2.dt:
        raise ValueError("emitters were computed on different grids")
    n = e1.g1.shape[0] - 1
    dt = e1.dt

    auto = (e1.g2auto + e2.g2auto).sum(axis=0)
    interference = (e1.g1 * np.conj(e2.g1)).real.sum(axis=0)
    cross = np.empty(n + 1)
    for j in range(n + 1):
        cross[j] = np.dot(e1.n_of_t[: n + 1 - j], e2.n_of_t[j:]) + np.dot(
            e2.n_of_t[: n + 1 - j], e1.n_of_t[j:]
        )
    g2_34 = 0.25 * (auto + cross - 2.0 * interference) * dt
    meta = {"normalized": normalized}
    if normalized:
        background = 0.25 * cross * dt
        with np.errstate(invalid="ignore", divide="ignore"):
            g2_34 = np.where(background > 1e-300, g2_34 / background, 0.0)
    theta = np.arange(n + 1) * dt
    return TpiCurve(theta_grid=theta, g2_34=g2_34, metadata=meta)


def _pair_worker(args) -> np.ndarray:
    cfg1, cfg2, stream1, stream2, normalized = args
    e1 = emitter_correlators(cfg1, stream=stream1)
    e2 = emitter_correlators(cfg2, stream=stream2)
    return hom_cross_correlation(e1, e2, normalized=normalized).g2_34


def averaged_hom(
    cfg1: EmitterConfig,
    cfg2: EmitterConfig,
    n_pairs: int,
    base_seed: int | None = None,
    workers: int = 1,
    normalized: bool = False,
) -> TpiCurve:
    """Mean g2_34 over realization pairs; pair k uses streams (2k, 2k+1).

    Distinct stream indices keep the two noise environments independent even
    when both configs carry the same seed.
    """
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be >= 1, got {n_pairs}")
    if base_seed is not None:
        cfg1 = replace(cfg1, noise=replace(cfg1.noise, seed=base_seed))
        cfg2 = replace(cfg2, noise=replace(cfg2.noise, seed=base_seed))
    jobs = [(cfg1, cfg2, 2 * k, 2 * k + 1, normalized) for k in range(n_pairs)]
    if workers > 1 and n_pairs > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_pair_worker, jobs, chunksize=1))
    else:
        rows = [_pair_worker(job) for job in jobs]
    g2_34 = np.mean(np.stack(rows), axis=0)
    grid = cfg1.build_grid()
    meta = {"n_pairs": n_pairs, "normalized": normalized, "workers": workers}
    return TpiCurve(theta_grid=grid.times(), g2_34=g2_34, metadata=meta)


def find_zeros(curve: TpiCurve, threshold: float) -> np.ndarray:
    """Midpoints of the theta intervals where g2_34 < threshold * max(g2_34).

    With an all-zero curve every point qualifies and a single midpoint comes
    back; callers should pick thresholds relative to a finite maximum.
    """
    top = curve.g2_34.max()
    below = curve.g2_34 < threshold * top
    mids = []
    i = 0
    n = below.size
    while i < n:
        if below[i]:
            j = i
            while j + 1 < n and below[j + 1]:
                j += 1
            mids.append(0.5 * (curve.theta_grid[i] + curve.theta_grid[j]))
            i = j + 1
        else:
            i += 1
    return np.array(mids)
