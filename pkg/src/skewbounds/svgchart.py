"""Minimal self-contained SVG 1.1 line charts, no external dependencies.

Pure string assembly from the data, so identical inputs give identical
bytes.  Good enough for eyeballing sweep output next to the CSV.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
    "#bcbd22",
    "#e377c2",
)

WIDTH = 760
HEIGHT = 420
MARGIN_LEFT = 64
MARGIN_RIGHT = 160
MARGIN_TOP = 32
MARGIN_BOTTOM = 48


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _fmt(v: float) -> str:
    return f"{v:.4g}"


def render_line_chart(
    x: Sequence[float],
    columns: Mapping[str, Sequence[float]],
    title: str,
    x_label: str = "theta",
) -> str:
    xs = np.asarray(x, dtype=np.float64)
    if xs.ndim != 1 or xs.shape[0] < 1:
        raise ValueError("x axis data must be a nonempty 1-d sequence")
    series = {name: np.asarray(v, dtype=np.float64) for name, v in columns.items()}
    for name, v in series.items():
        if v.shape != xs.shape:
            raise ValueError(f"series {name!r} length {v.shape} does not match x {xs.shape}")
    x_lo, x_hi = float(np.min(xs)), float(np.max(xs))
    all_y = np.concatenate(list(series.values())) if series else np.zeros(1)
    y_lo, y_hi = float(np.min(all_y)), float(np.max(all_y))
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(v: float) -> float:
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v: float) -> float:
        return MARGIN_TOP + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{MARGIN_LEFT}" y="20" font-family="sans-serif" font-size="14">{title}</text>',
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#000000" stroke-width="1"/>',
    ]
    for tv in _ticks(x_lo, x_hi):
        tx = px(tv)
        parts.append(
            f'<line x1="{tx:.2f}" y1="{MARGIN_TOP + plot_h}" x2="{tx:.2f}" '
            f'y2="{MARGIN_TOP + plot_h + 5}" stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{tx:.2f}" y="{MARGIN_TOP + plot_h + 20}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle">{_fmt(tv)}</text>'
        )
    for tv in _ticks(y_lo, y_hi):
        ty = py(tv)
        parts.append(
            f'<line x1="{MARGIN_LEFT - 5}" y1="{ty:.2f}" x2="{MARGIN_LEFT}" y2="{ty:.2f}" '
            'stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{ty + 4:.2f}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end">{_fmt(tv)}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{HEIGHT - 10}" font-family="sans-serif" '
        f'font-size="12" text-anchor="middle">{x_label}</text>'
    )
    for i, (name, ys) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(f"{px(float(a)):.2f},{py(float(b)):.2f}" for a, b in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )
        ly = MARGIN_TOP + 14 + 18 * i
        lx = MARGIN_LEFT + plot_w + 12
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        label = name.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        parts.append(
            f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" font-size="11">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
