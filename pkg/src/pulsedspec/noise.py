"""Detuning noise: Ornstein-Uhlenbeck traces, static draws, diagnostics.

The OU process is the stationary Gaussian Markov process with exponential
autocorrelation; the trace uses its exact one-step update, so there is no
discretization bias at any dt.  All randomness comes from
``numpy.random.default_rng`` seeded with ``[seed, stream]`` (PCG64, ziggurat
normals), giving reproducible, mutually independent streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit
from scipy.signal import lfilter

from .params import NoiseProcess


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream])


def ou_coefficients(sigma: float, tau_c: float, dt: float) -> tuple[float, float]:
    """Exact one-step OU update coefficients (decay factor, noise scale).

    x[k+1] - mean = phi * (x[k] - mean) + scale * xi_k with xi_k ~ N(0, 1).
    """
    phi = math.exp(-dt / tau_c)
    scale = sigma * math.sqrt(1.0 - phi * phi)
    return phi, scale


def ou_trace(process: NoiseProcess, dt: float, n: int, stream: int = 0) -> np.ndarray:
    """Length-n stationary OU trace sampled on the slice grid.

    The first sample is drawn from the stationary distribution
    N(delta0, sigma^2); subsequent samples follow the exact conditional law.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if process.sigma == 0.0:
        return np.full(n, process.delta0)
    rng = _rng(process.seed, stream)
    x0 = process.delta0 + process.sigma * rng.standard_normal()
    if n == 1:
        return np.array([x0])
    phi, scale = ou_coefficients(process.sigma, process.tau_c, dt)
    xi = rng.standard_normal(n - 1)
    # y[k] = phi*y[k-1] + scale*xi[k] as a linear recursion
    fluct, _ = lfilter([scale], [1.0, -phi], xi, zi=[phi * (x0 - process.delta0)])
    out = np.empty(n)
    out[0] = x0
    out[1:] = process.delta0 + fluct
    return out


def static_sample(
    mean: float, sigma: float, seed: int, n: int, stream: int = 0
) -> np.ndarray:
    """n i.i.d. draws from N(mean, sigma^2), deterministic given (seed, stream)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if sigma == 0.0:
        return np.full(n, float(mean))
    return mean + sigma * _rng(seed, stream).standard_normal(n)


@dataclass(frozen=True)
class NoiseStats:
    mean: float
    std: float
    tau_fit: float
    converged: bool


def noise_stats(trace: np.ndarray, dt: float) -> NoiseStats:
    """Sample mean/std plus an exponential fit to the autocovariance.

    The fit uses lags up to 5x a rough 1/e-crossing estimate of the
    correlation time.  Degenerate inputs (constant trace, failed fit) are
    reported via ``converged = False`` rather than raised.
    """
    trace = np.asarray(trace, dtype=float)
    if trace.size < 100:
        raise ValueError(f"need at least 100 samples, got {trace.size}")
    mean = float(trace.mean())
    std = float(trace.std())
    if std < 1e-12 * (1.0 + abs(mean)):
        return NoiseStats(mean=mean, std=std, tau_fit=math.nan, converged=False)

    x = trace - mean
    n = x.size
    # autocovariance via FFT, biased normalization
    m = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(x, m)
    acov = np.fft.irfft(f * np.conj(f), m)[:n] / n
    acf = acov / acov[0]

    below = np.nonzero(acf < 1.0 / math.e)[0]
    tau0_lags = int(below[0]) if below.size else n - 1
    tau0_lags = max(tau0_lags, 1)
    n_fit = min(max(5 * tau0_lags, 5), n - 1)
    lags = np.arange(n_fit + 1) * dt

    try:
        popt, _ = curve_fit(
            lambda t, tau: np.exp(-t / tau),
            lags,
            acf[: n_fit + 1],
            p0=[tau0_lags * dt],
            maxfev=2000,
        )
        tau_fit = float(popt[0])
        converged = math.isfinite(tau_fit) and tau_fit > 0
    except (RuntimeError, ValueError):
        tau_fit, converged = math.nan, False
    return NoiseStats(mean=mean, std=std, tau_fit=tau_fit, converged=converged)
