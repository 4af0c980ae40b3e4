"""Pure-numpy correlation sweep kernels.

Both kernels propagate the full wavefront of regression seeds one slice at
a time: seed i (started at slice boundary i) sits at lag j = k + 1 - i after
step k, so each step is a single 4 x n_active matrix product.  Accumulation
order is fixed, making results independent of how callers parallelize.
"""

from __future__ import annotations

import numpy as np


def _check(transfer: np.ndarray, seeds: np.ndarray) -> int:
    n = transfer.shape[0]
    if transfer.shape != (n, 4, 4):
        raise ValueError(f"transfer must have shape (n, 4, 4), got {transfer.shape}")
    if seeds.shape != (n + 1, 4):
        raise ValueError(
            f"seeds must have shape (n + 1, 4) = ({n + 1}, 4), got {seeds.shape}"
        )
    return n


def accumulate_correlation(
    transfer: np.ndarray, seeds: np.ndarray, readout: int
) -> np.ndarray:
    """c[j] = sum over i with i + j <= n of (T_{i+j-1} ... T_i seeds[i])[readout]."""
    n = _check(transfer, seeds)
    s = np.empty((4, n + 1), dtype=np.complex128)
    c = np.zeros(n + 1, dtype=np.complex128)
    s[:, 0] = seeds[0]
    c[0] = seeds[0, readout]
    for k in range(n):
        s[:, : k + 1] = transfer[k] @ s[:, : k + 1]
        c[1 : k + 2] += s[readout, k::-1]
        s[:, k + 1] = seeds[k + 1]
        c[0] += seeds[k + 1, readout]
    return c


def correlation_field(
    transfer: np.ndarray, seeds: np.ndarray, readout: int
) -> np.ndarray:
    """Dense field F[i, j] of the per-start-time readouts; zero for i + j > n."""
    n = _check(transfer, seeds)
    s = np.empty((4, n + 1), dtype=np.complex128)
    f = np.zeros((n + 1, n + 1), dtype=np.complex128)
    idx = np.arange(n + 1)
    s[:, 0] = seeds[0]
    f[:, 0] = seeds[:, readout]
    for k in range(n):
        s[:, : k + 1] = transfer[k] @ s[:, : k + 1]
        f[idx[: k + 1], k + 1 - idx[: k + 1]] = s[readout, : k + 1]
        s[:, k + 1] = seeds[k + 1]
    return f
