"""Minimal deterministic SVG rendering of 3-D curves.

Three fixed orthographic panels: X-Y, X-Z, and an isometric projection.
Output is plain hand-assembled SVG so identical inputs produce identical
bytes, which keeps plots diffable in tests and across runs.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .fileio import atomic_write_text

__all__ = ["render_curves_svg", "write_curves_svg"]

_PANEL = 300          # drawable panel size, px
_MARGIN = 46          # margin around each panel for ticks/labels, px
_GAP = 24             # gap between panels, px
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")

_ISO_C30 = math.cos(math.radians(30.0))
_ISO_S30 = math.sin(math.radians(30.0))


def _iso_project(points: np.ndarray) -> np.ndarray:
    """Isometric projection of (N, 3) points onto the drawing plane."""
    x, y, z = points[:, 0], points[:, 1], points[:, 2]
    u = (x - y) * _ISO_C30
    v = (x + y) * _ISO_S30 - z
    return np.column_stack([u, v])


def _nice_step(span: float) -> float:
    """Tick step of 1/2/5 x 10^k sized to give roughly 5 ticks."""
    if span <= 0.0:
        return 1.0
    raw = span / 5.0
    power = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * power:
            return mult * power
    return 10.0 * power


def _ticks(lo: float, hi: float) -> list[float]:
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + 1e-9 * max(abs(hi), 1.0):
        ticks.append(0.0 if abs(value) < 1e-12 else value)
        value += step
    return ticks


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def _panel(
    projected: list[np.ndarray], labels: tuple[str, str], title: str, origin_x: float
) -> list[str]:
    """Render one panel (axes, ticks, polylines) at the given x offset."""
    allpts = np.vstack(projected)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    pad = 0.05 * float(span.max())
    lo, hi = lo - pad, hi + pad
    scale = _PANEL / float(np.max(hi - lo))

    # center the data inside the square panel
    offset = (np.array([_PANEL, _PANEL]) - scale * (hi - lo)) / 2.0

    def to_px(uv: np.ndarray) -> np.ndarray:
        px = origin_x + _MARGIN + offset[0] + (uv[:, 0] - lo[0]) * scale
        py = _MARGIN + _PANEL - (offset[1] + (uv[:, 1] - lo[1]) * scale)
        return np.column_stack([px, py])

    x0, x1 = origin_x + _MARGIN, origin_x + _MARGIN + _PANEL
    y0, y1 = _MARGIN, _MARGIN + _PANEL
    parts = [
        f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_PANEL}" height="{_PANEL}" '
        'fill="none" stroke="#333333" stroke-width="1"/>',
        f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(y0 - 28)}" text-anchor="middle" '
        f'font-size="13" font-family="sans-serif">{title}</text>',
        f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(y1 + 34)}" text-anchor="middle" '
        f'font-size="11" font-family="sans-serif">{labels[0]} (mm)</text>',
        f'<text x="{_fmt(x0 - 36)}" y="{_fmt((y0 + y1) / 2)}" text-anchor="middle" '
        f'font-size="11" font-family="sans-serif" '
        f'transform="rotate(-90 {_fmt(x0 - 36)} {_fmt((y0 + y1) / 2)})">{labels[1]} (mm)</text>',
    ]

    # data-coordinate range covered by the full panel square
    u_min = lo[0] - offset[0] / scale
    v_min = lo[1] - offset[1] / scale
    for tick in _ticks(u_min, u_min + _PANEL / scale):
        px = x0 + (tick - u_min) * scale
        if not x0 <= px <= x1:
            continue
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(y1)}" x2="{_fmt(px)}" y2="{_fmt(y1 + 5)}" '
            'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(px)}" y="{_fmt(y1 + 17)}" text-anchor="middle" '
            f'font-size="10" font-family="sans-serif">{_fmt(tick)}</text>'
        )
    for tick in _ticks(v_min, v_min + _PANEL / scale):
        py = y1 - (tick - v_min) * scale
        if not y0 <= py <= y1:
            continue
        parts.append(
            f'<line x1="{_fmt(x0 - 5)}" y1="{_fmt(py)}" x2="{_fmt(x0)}" y2="{_fmt(py)}" '
            'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x0 - 8)}" y="{_fmt(py + 3)}" text-anchor="end" '
            f'font-size="10" font-family="sans-serif">{_fmt(tick)}</text>'
        )

    for k, uv in enumerate(projected):
        px = to_px(uv)
        coords = " ".join(f"{_fmt(p[0])},{_fmt(p[1])}" for p in px)
        color = _COLORS[k % len(_COLORS)]
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
    return parts


def render_curves_svg(curves: list[np.ndarray], names: list[str] | None = None) -> str:
    """Render one or more (N, 3) mm point arrays as a three-panel SVG string."""
    if not curves:
        raise ValueError("need at least one curve to plot")
    pts = [np.asarray(c, dtype=float).reshape(-1, 3) for c in curves]

    panel_w = _PANEL + 2 * _MARGIN
    width = 3 * panel_w + 2 * _GAP
    height = _PANEL + 2 * _MARGIN + (18 if names else 0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    panels = [
        ([p[:, :2] for p in pts], ("x", "y"), "top view (X-Y)"),
        ([p[:, [0, 2]] for p in pts], ("x", "z"), "side view (X-Z)"),
        ([_iso_project(p) for p in pts], ("u", "v"), "isometric"),
    ]
    for k, (projected, labels, title) in enumerate(panels):
        parts.extend(_panel(projected, labels, title, k * (panel_w + _GAP)))

    if names:
        for k, name in enumerate(names):
            color = _COLORS[k % len(_COLORS)]
            x = 10 + 170 * k
            y = height - 6
            parts.append(
                f'<line x1="{x}" y1="{y - 4}" x2="{x + 18}" y2="{y - 4}" '
                f'stroke="{color}" stroke-width="2"/>'
            )
            parts.append(
                f'<text x="{x + 22}" y="{y}" font-size="11" font-family="sans-serif">{name}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_curves_svg(
    path: str | Path, curves: list[np.ndarray], names: list[str] | None = None
) -> None:
    atomic_write_text(path, render_curves_svg(curves, names))
