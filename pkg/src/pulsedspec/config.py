"""Flat INI run configuration: parsing, validation, round-trip echo."""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass

from .ensemble import EnsembleSpec
from .params import NoiseProcess, PhysicsParams, PulseSequence

DEFAULT_SEED = 12345

MODES = ("spectrum", "tpi", "ensemble", "noise", "decay-check")

# section -> {key: type}
_SCHEMA = {
    "run": {
        "mode": str,
        "seed": int,
        "realizations": int,
        "threads": int,
        "normalized": bool,
    },
    "physics": {"gamma": float},
    "pulses": {"tau": float, "omega": float, "n_pulses": int},
    "noise": {"delta0": float, "sigma": float, "tau_c": float},
    "noise2": {"delta0": float, "sigma": float, "tau_c": float},
    "ensemble": {"n_emitters": int, "mean": float, "sigma": float},
    "grid": {"n_slices_per_period": int, "dt": float, "total_time": float},
    "omega_grid": {"min": float, "max": float, "step": float},
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    mode: str
    physics: PhysicsParams
    pulses: PulseSequence | None
    noise: NoiseProcess | None
    noise2: NoiseProcess | None
    ensemble: EnsembleSpec | None
    n_slices_per_period: int | None
    dt: float | None
    total_time: float | None
    omega_min: float
    omega_max: float
    omega_step: float
    realizations: int
    seed: int
    threads: int
    normalized: bool


def _convert(section: str, key: str, raw: str, typ):
    try:
        if typ is bool:
            lowered = raw.strip().lower()
            if lowered in ("true", "yes", "1", "on"):
                return True
            if lowered in ("false", "no", "0", "off"):
                return False
            raise ValueError(raw)
        return typ(raw)
    except ValueError:
        raise ConfigError(
            f"[{section}] {key}: cannot parse {raw!r} as {typ.__name__}"
        ) from None


def _read_sections(text: str) -> dict[str, dict]:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    out: dict[str, dict] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        schema = _SCHEMA[section]
        values = {}
        for key, raw in parser.items(section):
            if key not in schema:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
            values[key] = _convert(section, key, raw, schema[key])
        out[section] = values
    return out


def _require(sections, name: str, mode: str):
    if name not in sections:
        raise ConfigError(f"mode {mode!r} requires a [{name}] section")
    return sections[name]


def _forbid(sections, name: str, mode: str):
    if name in sections:
        raise ConfigError(f"mode {mode!r} does not accept a [{name}] section")


def parse_config(text: str) -> RunConfig:
    """Parse and validate; all defaults are filled in the returned record."""
    sections = _read_sections(text)
    run = sections.get("run", {})
    mode = run.get("mode")
    if mode is None:
        raise ConfigError("[run] mode is required")
    if mode not in MODES:
        raise ConfigError(f"[run] mode must be one of {MODES}, got {mode!r}")
    seed = run.get("seed", DEFAULT_SEED)
    realizations = run.get("realizations", 1)
    threads = run.get("threads", 1)
    normalized = run.get("normalized", False)
    if realizations < 1:
        raise ConfigError("[run] realizations must be >= 1")
    if threads < 1:
        raise ConfigError("[run] threads must be >= 1")
    if normalized and mode != "tpi":
        raise ConfigError("[run] normalized applies to tpi mode only")

    try:
        physics = PhysicsParams(**sections.get("physics", {}))
    except ValueError as exc:
        raise ConfigError(f"[physics] {exc}") from None

    pulses = None
    if "pulses" in sections:
        block = sections["pulses"]
        for key in ("tau", "omega", "n_pulses"):
            if key not in block:
                raise ConfigError(f"[pulses] {key} is required")
        try:
            pulses = PulseSequence(**block)
        except ValueError as exc:
            raise ConfigError(f"[pulses] {exc}") from None

    def noise_block(name: str) -> NoiseProcess:
        block = sections[name]
        for key in ("delta0", "sigma", "tau_c"):
            if key not in block:
                raise ConfigError(f"[{name}] {key} is required")
        try:
            return NoiseProcess(seed=seed, **block)
        except ValueError as exc:
            raise ConfigError(f"[{name}] {exc}") from None

    grid = sections.get("grid", {})
    n_slices = grid.get("n_slices_per_period")
    dt = grid.get("dt")
    total_time = grid.get("total_time")
    if pulses is not None and total_time is not None:
        if not math.isclose(total_time, pulses.total_time, rel_tol=1e-9, abs_tol=1e-12):
            raise ConfigError(
                f"[grid] total_time = {total_time:g} contradicts "
                f"n_pulses * tau = {pulses.total_time:g}"
            )
    if pulses is not None and dt is not None:
        raise ConfigError("[grid] with pulses, set n_slices_per_period instead of dt")

    og = sections.get("omega_grid", {})
    omega_min = og.get("min", -40.0)
    omega_max = og.get("max", 40.0)
    omega_step = og.get("step", 0.05)
    if not omega_step > 0 or omega_max <= omega_min:
        raise ConfigError("[omega_grid] needs max > min and step > 0")

    noise = noise2 = None
    ensemble = None
    if mode in ("spectrum", "tpi", "noise"):
        _forbid(sections, "ensemble", mode)
        _require(sections, "noise", mode)
        noise = noise_block("noise")
        if mode == "tpi":
            _require(sections, "noise2", mode)
            noise2 = noise_block("noise2")
        else:
            _forbid(sections, "noise2", mode)
        if mode == "noise":
            _forbid(sections, "pulses", mode)
            if dt is None or total_time is None:
                raise ConfigError("mode 'noise' requires [grid] dt and total_time")
        elif pulses is None and (dt is None or total_time is None):
            raise ConfigError(
                f"mode {mode!r} without [pulses] requires [grid] dt and total_time"
            )
    elif mode == "ensemble":
        for name in ("noise", "noise2"):
            _forbid(sections, name, mode)
        block = _require(sections, "ensemble", mode)
        for key in ("n_emitters", "mean", "sigma"):
            if key not in block:
                raise ConfigError(f"[ensemble] {key} is required")
        if pulses is None and (dt is None or total_time is None):
            raise ConfigError(
                "mode 'ensemble' without [pulses] requires [grid] dt and total_time"
            )
        try:
            ensemble = EnsembleSpec(
                n_emitters=block["n_emitters"],
                detuning_mean=block["mean"],
                detuning_sigma=block["sigma"],
                seed=seed,
                physics=physics,
                pulses=pulses,
                total_time=total_time,
                n_slices_per_period=n_slices,
                dt=dt,
            )
        except ValueError as exc:
            raise ConfigError(f"[ensemble] {exc}") from None
    else:  # decay-check
        for name in ("noise", "noise2", "ensemble", "pulses"):
            _forbid(sections, name, mode)

    return RunConfig(
        mode=mode,
        physics=physics,
        pulses=pulses,
        noise=noise,
        noise2=noise2,
        ensemble=ensemble,
        n_slices_per_period=n_slices,
        dt=dt,
        total_time=total_time,
        omega_min=omega_min,
        omega_max=omega_max,
        omega_step=omega_step,
        realizations=realizations,
        seed=seed,
        threads=threads,
        normalized=normalized,
    )


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_config(cfg: RunConfig) -> str:
    """Echo a config as INI text; parse_config(emit_config(cfg)) == cfg."""
    parser = configparser.ConfigParser(interpolation=None)
    parser["run"] = {
        "mode": cfg.mode,
        "seed": _fmt(cfg.seed),
        "realizations": _fmt(cfg.realizations),
        "threads": _fmt(cfg.threads),
    }
    if cfg.normalized:
        parser["run"]["normalized"] = "true"
    parser["physics"] = {"gamma": _fmt(cfg.physics.gamma)}
    if cfg.pulses is not None:
        parser["pulses"] = {
            "tau": _fmt(cfg.pulses.tau),
            "omega": _fmt(cfg.pulses.omega),
            "n_pulses": _fmt(cfg.pulses.n_pulses),
        }
    for name, block in (("noise", cfg.noise), ("noise2", cfg.noise2)):
        if block is not None:
            parser[name] = {
                "delta0": _fmt(block.delta0),
                "sigma": _fmt(block.sigma),
                "tau_c": _fmt(block.tau_c),
            }
    if cfg.ensemble is not None:
        parser["ensemble"] = {
            "n_emitters": _fmt(cfg.ensemble.n_emitters),
            "mean": _fmt(cfg.ensemble.detuning_mean),
            "sigma": _fmt(cfg.ensemble.detuning_sigma),
        }
    grid = {}
    if cfg.n_slices_per_period is not None:
        grid["n_slices_per_period"] = _fmt(cfg.n_slices_per_period)
    if cfg.dt is not None:
        grid["dt"] = _fmt(cfg.dt)
    if cfg.total_time is not None:
        grid["total_time"] = _fmt(cfg.total_time)
    if grid:
        parser["grid"] = grid
    parser["omega_grid"] = {
        "min": _fmt(cfg.omega_min),
        "max": _fmt(cfg.omega_max),
        "step": _fmt(cfg.omega_step),
    }
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()
