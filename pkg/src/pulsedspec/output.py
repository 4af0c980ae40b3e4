"""CSV, metadata, and SVG writers with golden-file-stable formatting."""

from __future__ import annotations

import os
from collections.abc import Sequence

import numpy as np

from . import __version__
from .config import RunConfig, emit_config


def format_value(x: float) -> str:
    """9 significant digits, '.' decimal separator."""
    return f"{x:.9g}"


def csv_text(
    columns: Sequence[tuple[str, np.ndarray]], cfg: RunConfig | None = None
) -> str:
    """CSV body with a comment header carrying version, seed and parameters."""
    lines = [f"# pulsedspec {__version__}"]
    if cfg is not None:
        lines.append(f"# seed={cfg.seed}")
        for raw in emit_config(cfg).strip().splitlines():
            if raw:
                lines.append(f"# {raw}")
    names = [name for name, _ in columns]
    arrays = [np.asarray(arr) for _, arr in columns]
    lines.append(",".join(names))
    for row in zip(*arrays):
        lines.append(",".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(
    path: str, columns: Sequence[tuple[str, np.ndarray]], cfg: RunConfig | None = None
) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(csv_text(columns, cfg))


def write_metadata(path: str, cfg: RunConfig) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# pulsedspec {__version__}\n")
        fh.write(emit_config(cfg))


def write_svg(
    path: str, x: np.ndarray, y: np.ndarray, xlabel: str, ylabel: str
) -> None:
    """Single-polyline plot with axes and range labels; no plotting framework."""
    width, height = 640, 420
    ml, mr, mt, mb = 60, 20, 20, 50
    pw, ph = width - ml - mr, height - mt - mb
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xspan = x.max() - x.min() or 1.0
    ylo = min(y.min(), 0.0)
    yspan = (y.max() - ylo) or 1.0
    px = ml + (x - x.min()) / xspan * pw
    py = mt + (1.0 - (y - ylo) / yspan) * ph
    points = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
        f'<polyline points="{points}" fill="none" stroke="steelblue" stroke-width="1"/>',
        f'<text x="{ml + pw / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        f'font-size="14">{xlabel}</text>',
        f'<text x="16" y="{mt + ph / 2:.0f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 16 {mt + ph / 2:.0f})">{ylabel}</text>',
        f'<text x="{ml}" y="{height - 30}" text-anchor="middle" font-size="12">'
        f"{format_value(x.min())}</text>",
        f'<text x="{ml + pw}" y="{height - 30}" text-anchor="middle" font-size="12">'
        f"{format_value(x.max())}</text>",
        f'<text x="{ml - 6}" y="{mt + 4}" text-anchor="end" font-size="12">'
        f"{format_value(y.max())}</text>",
        f'<text x="{ml - 6}" y="{mt + ph + 4}" text-anchor="end" font-size="12">'
        f"{format_value(ylo)}</text>",
        "</svg>",
    ]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
