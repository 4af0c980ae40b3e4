"""Summed emission spectrum of a dilute ensemble of static-detuning emitters."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .correlation import EmitterConfig
from .noise import static_sample
from .params import NoiseProcess, PhysicsParams, PulseSequence
from .spectrum import DegenerateSpectrumError, Spectrum, single_spectrum


@dataclass(frozen=True)
class EnsembleSpec:
    """Static Gaussian spread of emitter detunings under a shared protocol.

    Detunings are drawn once per emitter; there is no temporal noise.
    """

    n_emitters: int
    detuning_mean: float
    detuning_sigma: float
    seed: int
    physics: PhysicsParams
    pulses: PulseSequence | None = None
    total_time: float | None = None
    n_slices_per_period: int | None = None
    dt: float | None = None

    def __post_init__(self):
        if self.n_emitters < 1:
            raise ValueError(f"n_emitters must be >= 1, got {self.n_emitters}")
        if self.detuning_sigma < 0:
            raise ValueError("detuning_sigma must be >= 0")

    def draw_detunings(self) -> np.ndarray:
        return static_sample(
            self.detuning_mean, self.detuning_sigma, self.seed, self.n_emitters
        )

    def emitter_config(self, delta: float) -> EmitterConfig:
        return EmitterConfig(
            physics=self.physics,
            pulses=self.pulses,
            noise=NoiseProcess(delta0=float(delta), sigma=0.0, tau_c=1.0, seed=self.seed),
            total_time=self.total_time,
            n_slices_per_period=self.n_slices_per_period,
            dt=self.dt,
        )


@dataclass(frozen=True)
class EnsembleResult:
    spectrum: Spectrum
    detunings: np.ndarray


def _emitter_worker(args) -> np.ndarray:
    spec, delta, omega_grid = args
    return single_spectrum(spec.emitter_config(delta), omega_grid).p


def ensemble_spectrum(
    spec: EnsembleSpec, omega_grid: np.ndarray, workers: int = 1
) -> EnsembleResult:
    """Unweighted sum of the individual static-emitter spectra.

    The per-emitter map is embarrassingly parallel; contributions are summed
    in emitter order regardless of worker count.
    """
    omega_grid = np.asarray(omega_grid, dtype=float)
    detunings = spec.draw_detunings()
    jobs = [(spec, delta, omega_grid) for delta in detunings]
    if workers > 1 and spec.n_emitters > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_emitter_worker, jobs, chunksize=8))
    else:
        rows = [_emitter_worker(job) for job in jobs]
    p = np.sum(np.stack(rows), axis=0)
    meta = {
        "n_emitters": spec.n_emitters,
        "seed": spec.seed,
        "workers": workers,
    }
    return EnsembleResult(
        spectrum=Spectrum(omega_grid=omega_grid, p=p, metadata=meta),
        detunings=detunings,
    )


def rescale_to_match_peak(a: Spectrum, b: Spectrum) -> Spectrum:
    """Return ``a`` scaled so its maximum equals that of ``b``."""
    amax = a.p.max()
    bmax = b.p.max()
    if not amax > 0 or not bmax > 0:
        raise DegenerateSpectrumError("cannot rescale a spectrum with no positive peak")
    return replace(a, p=a.p * (bmax / amax))
