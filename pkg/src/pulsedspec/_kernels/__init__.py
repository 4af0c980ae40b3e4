"""Backend selection for the hot correlation kernels.

The compiled Cython extension is used when importable; otherwise the numpy
wavefront implementation takes over.  Set ``PULSEDSPEC_BACKEND=python`` or
``PULSEDSPEC_BACKEND=compiled`` to force a choice (the latter raises if the
extension was not built).  Both backends produce identical accumulation
order, so swapping them only changes floating-point op scheduling at the
1e-12 level.
"""

from __future__ import annotations

import os

import numpy as np

from . import py_backend

try:
    from . import _core
except ImportError:
    _core = None

_BACKENDS = {"python": py_backend}
if _core is not None:
    _BACKENDS["compiled"] = _core


def get_backend(name: str):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"backend {name!r} unavailable (have: {sorted(_BACKENDS)})"
        ) from None


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


_forced = os.environ.get("PULSEDSPEC_BACKEND")
if _forced:
    _active = get_backend(_forced)
    backend_name = _forced
else:
    backend_name = "compiled" if _core is not None else "python"
    _active = _BACKENDS[backend_name]


def _prep(transfer, seeds):
    return (
        np.ascontiguousarray(transfer, dtype=np.complex128),
        np.ascontiguousarray(seeds, dtype=np.complex128),
    )


def accumulate_correlation(transfer, seeds, readout: int) -> np.ndarray:
    transfer, seeds = _prep(transfer, seeds)
    return _active.accumulate_correlation(transfer, seeds, readout)


def correlation_field(transfer, seeds, readout: int) -> np.ndarray:
    transfer, seeds = _prep(transfer, seeds)
    return _active.correlation_field(transfer, seeds, readout)
