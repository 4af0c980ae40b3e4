"""Compare the compiled correlation kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--sizes 200,400,800,1600] [--repeat 3]

Times the triangular two-time correlation sweep, the dominant cost of every
spectrum and interference run, on realistic transfer matrices from a noisy
pulsed trajectory.
"""

import argparse
import time

import numpy as np

from pulsedspec import _kernels
from pulsedspec.bloch import EXCITED_STATE, propagate_with_transfer, transfer_matrices
from pulsedspec.correlation import seed_sigma_minus_rho
from pulsedspec.params import PhysicsParams, make_grid


def make_problem(n_steps):
    grid = make_grid(total_time=n_steps * 1e-3, dt=1e-3)
    rng = np.random.default_rng(n_steps)
    trace = rng.normal(3.0, 4.0, grid.n_steps)
    transfer = transfer_matrices(grid, trace, PhysicsParams())
    traj = propagate_with_transfer(EXCITED_STATE, transfer)
    seeds = seed_sigma_minus_rho(traj)
    return np.ascontiguousarray(transfer), np.ascontiguousarray(seeds)


def bench(fn, transfer, seeds, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(transfer, seeds, 2)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="200,400,800,1600")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = {name: _kernels.get_backend(name) for name in _kernels.available_backends()}
    print(f"backends: {', '.join(backends)} (active: {_kernels.backend_name})")
    header = f"{'n_steps':>8}" + "".join(f"  {name:>12}" for name in backends)
    if len(backends) > 1:
        header += f"  {'speedup':>8}"
    print(header)

    for n in sizes:
        transfer, seeds = make_problem(n)
        times = {}
        results = {}
        for name, mod in backends.items():
            times[name], results[name] = bench(
                mod.accumulate_correlation, transfer, seeds, args.repeat
            )
        vals = list(results.values())
        assert all(np.abs(v - vals[0]).max() < 1e-10 for v in vals[1:])
        row = f"{n:>8}" + "".join(f"  {times[name] * 1e3:>10.2f}ms" for name in backends)
        if "compiled" in times and "python" in times:
            row += f"  {times['python'] / times['compiled']:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
