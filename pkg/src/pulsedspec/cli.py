"""Command line front end: spectrum, tpi, ensemble, noise, decay-check."""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

import numpy as np

from .bloch import EXCITED_STATE, RHO_EE, propagate
from .config import DEFAULT_SEED, ConfigError, RunConfig, parse_config
from .correlation import EmitterConfig
from .ensemble import ensemble_spectrum
from .noise import noise_stats, ou_trace
from .output import ensure_dir, write_csv, write_metadata, write_svg
from .params import PhysicsParams, make_grid
from .spectrum import averaged_spectrum, default_omega_grid
from .tpi import averaged_hom


def _emitter_config(cfg: RunConfig, noise) -> EmitterConfig:
    return EmitterConfig(
        physics=cfg.physics,
        pulses=cfg.pulses,
        noise=noise,
        total_time=cfg.total_time,
        n_slices_per_period=cfg.n_slices_per_period,
        dt=cfg.dt,
    )


def _omega_grid(cfg: RunConfig) -> np.ndarray:
    return default_omega_grid(cfg.omega_min, cfg.omega_max, cfg.omega_step)


def run_spectrum(cfg: RunConfig, out_dir: str, svg: bool) -> int:
    spec = averaged_spectrum(
        _emitter_config(cfg, cfg.noise),
        _omega_grid(cfg),
        n_realizations=cfg.realizations,
        workers=cfg.threads,
    )
    write_csv(
        os.path.join(out_dir, "spectrum.csv"),
        [("omega", spec.omega_grid), ("p", spec.p)],
        cfg,
    )
    write_metadata(os.path.join(out_dir, "spectrum_meta.ini"), cfg)
    if svg:
        write_svg(
            os.path.join(out_dir, "spectrum.svg"),
            spec.omega_grid,
            spec.p,
            "omega",
            "P(omega)",
        )
    return 0


def run_tpi(cfg: RunConfig, out_dir: str, svg: bool) -> int:
    curve = averaged_hom(
        _emitter_config(cfg, cfg.noise),
        _emitter_config(cfg, cfg.noise2),
        n_pairs=cfg.realizations,
        workers=cfg.threads,
        normalized=cfg.normalized,
    )
    write_csv(
        os.path.join(out_dir, "tpi.csv"),
        [("theta", curve.theta_grid), ("g2_34", curve.g2_34)],
        cfg,
    )
    write_metadata(os.path.join(out_dir, "tpi_meta.ini"), cfg)
    if svg:
        write_svg(
            os.path.join(out_dir, "tpi.svg"),
            curve.theta_grid,
            curve.g2_34,
            "theta",
            "g2_34(theta)",
        )
    return 0


def run_ensemble(cfg: RunConfig, out_dir: str, svg: bool) -> int:
    result = ensemble_spectrum(cfg.ensemble, _omega_grid(cfg), workers=cfg.threads)
    spec = result.spectrum
    write_csv(
        os.path.join(out_dir, "ensemble.csv"),
        [("omega", spec.omega_grid), ("p", spec.p)],
        cfg,
    )
    write_csv(
        os.path.join(out_dir, "detunings.csv"),
        [("index", np.arange(result.detunings.size)), ("delta", result.detunings)],
        cfg,
    )
    write_metadata(os.path.join(out_dir, "ensemble_meta.ini"), cfg)
    if svg:
        write_svg(
            os.path.join(out_dir, "ensemble.svg"),
            spec.omega_grid,
            spec.p,
            "omega",
            "P(omega)",
        )
    return 0


def run_noise(cfg: RunConfig, out_dir: str, svg: bool) -> int:
    grid = make_grid(total_time=cfg.total_time, dt=cfg.dt, tau_c=cfg.noise.tau_c)
    trace = ou_trace(cfg.noise, grid.dt, grid.n_steps)
    t = np.arange(grid.n_steps) * grid.dt
    write_csv(os.path.join(out_dir, "noise.csv"), [("t", t), ("delta", trace)], cfg)
    write_metadata(os.path.join(out_dir, "noise_meta.ini"), cfg)
    if trace.size >= 100:
        stats = noise_stats(trace, grid.dt)
        print(
            f"noise stats: mean={stats.mean:.6g} std={stats.std:.6g} "
            f"tau_fit={stats.tau_fit:.6g} converged={stats.converged}"
        )
    if svg:
        write_svg(os.path.join(out_dir, "noise.svg"), t, trace, "t", "delta(t)")
    return 0


def run_decay_check(gamma: float = 2.0, dt: float = 1e-3, total_time: float = 3.0) -> int:
    params = PhysicsParams(gamma=gamma)
    grid = make_grid(total_time=total_time, dt=dt)
    trace = np.zeros(grid.n_steps)
    traj = propagate(EXCITED_STATE, grid, trace, params)
    expected = np.exp(-gamma * grid.times())
    err = float(np.max(np.abs(traj[:, RHO_EE].real - expected)))
    print(f"decay-check: max|rho_ee(t) - exp(-{gamma:g} t)| = {err:.3e}")
    if err < 1e-6:
        print("decay-check: PASS")
        return 0
    print("decay-check: FAIL")
    return 1


_RUNNERS = {
    "spectrum": run_spectrum,
    "tpi": run_tpi,
    "ensemble": run_ensemble,
    "noise": run_noise,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulsedspec",
        description="Pulse-controlled quantum emitter spectra in noisy environments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("spectrum", "tpi", "ensemble", "noise"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="INI configuration file")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--realizations", type=int, default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--svg", action="store_true")
        if name == "tpi":
            p.add_argument("--normalized", action="store_true")
    sub.add_parser("decay-check")
    return parser


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates: dict = {}
    if args.seed is not None:
        updates["seed"] = args.seed
        for name in ("noise", "noise2"):
            block = getattr(cfg, name)
            if block is not None:
                updates[name] = dataclasses.replace(block, seed=args.seed)
        if cfg.ensemble is not None:
            updates["ensemble"] = dataclasses.replace(cfg.ensemble, seed=args.seed)
    if args.realizations is not None:
        updates["realizations"] = args.realizations
    if args.threads is not None:
        updates["threads"] = args.threads
    if getattr(args, "normalized", False):
        updates["normalized"] = True
    return dataclasses.replace(cfg, **updates) if updates else cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "decay-check":
        return run_decay_check()
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
        if cfg.mode != args.command:
            raise ConfigError(
                f"config mode {cfg.mode!r} does not match subcommand {args.command!r}"
            )
        cfg = _apply_overrides(cfg, args)
        out_dir = ensure_dir(args.out)
        return _RUNNERS[args.command](cfg, out_dir, args.svg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
