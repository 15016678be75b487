"""Deterministic SVG rendering of the parameter-plane atlas.

Byte-identical output for identical inputs: fixed palette, fixed float
formatting, no timestamps, no randomness anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .atlas import GammaSample, GridSpec, RegionReport

# region id -> fill; thirteen distinct colors plus boundary and unknown
PALETTE: dict[str, str] = {
    "1": "#4e79a7",
    "2": "#f28e2b",
    "3": "#e15759",
    "4": "#76b7b2",
    "5": "#59a14f",
    "6": "#edc948",
    "7": "#b07aa1",
    "8": "#ff9da7",
    "9": "#9c755f",
    "10": "#bab0ac",
    "11": "#86bcb6",
    "12": "#d37295",
    "13": "#fabfd2",
    "B": "#333333",
    "?": "#ffffff",
}

_SIZE = 800.0
_MARGIN = 40.0


def _fmt(x: float) -> str:
    return f"{x:.3f}"


@dataclass(frozen=True)
class _View:
    b1_min: float
    b1_max: float
    b2_min: float
    b2_max: float

    def to_px(self, b1: float, b2: float) -> tuple[float, float]:
        w = self.b1_max - self.b1_min or 1.0
        h = self.b2_max - self.b2_min or 1.0
        x = _MARGIN + (b1 - self.b1_min) / w * _SIZE
        y = _MARGIN + (self.b2_max - b2) / h * _SIZE
        return x, y

    def contains(self, b1: float, b2: float, pad: float = 0.0) -> bool:
        return (
            self.b1_min - pad <= b1 <= self.b1_max + pad
            and self.b2_min - pad <= b2 <= self.b2_max + pad
        )


def render_regions_svg(
    grid: GridSpec,
    rows: Sequence[RegionReport],
    curve: Iterable[GammaSample] = (),
    cusps: Sequence[tuple[float, float]] = (),
    title: str = "",
) -> str:
    """Raster of region colors with the fold curve, axes, and the
    zero-potential parabola overlaid."""
    view = _View(grid.b1_min, grid.b1_max, grid.b2_min, grid.b2_max)
    cell_w = _SIZE / max(1, grid.n1 - 1 or 1)
    cell_h = _SIZE / max(1, grid.n2 - 1 or 1)
    out: list[str] = []
    total = _SIZE + 2 * _MARGIN
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(total)}" '
        f'height="{_fmt(total)}" viewBox="0 0 {_fmt(total)} {_fmt(total)}">'
    )
    if title:
        out.append(f'<title>{title}</title>')
    out.append(f'<rect x="0" y="0" width="{_fmt(total)}" height="{_fmt(total)}" fill="#ffffff"/>')
    # region cells
    out.append('<g stroke="none">')
    for rep in rows:
        b1, b2 = rep.beta
        x, y = view.to_px(b1, b2)
        color = PALETTE.get(rep.region_label, PALETTE["?"])
        out.append(
            f'<rect x="{_fmt(x - cell_w / 2)}" y="{_fmt(y - cell_h / 2)}" '
            f'width="{_fmt(cell_w)}" height="{_fmt(cell_h)}" fill="{color}"/>'
        )
    out.append("</g>")
    # axes
    out.append('<g stroke="#000000" stroke-width="1.0" fill="none">')
    if view.b1_min <= 0 <= view.b1_max:
        x0, _ = view.to_px(0.0, view.b2_min)
        out.append(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(_MARGIN)}" x2="{_fmt(x0)}" y2="{_fmt(_MARGIN + _SIZE)}"/>'
        )
    if view.b2_min <= 0 <= view.b2_max:
        _, y0 = view.to_px(view.b1_min, 0.0)
        out.append(
            f'<line x1="{_fmt(_MARGIN)}" y1="{_fmt(y0)}" x2="{_fmt(_MARGIN + _SIZE)}" y2="{_fmt(y0)}"/>'
        )
    out.append("</g>")
    # zero-potential parabola: (b1-b2)^2 + 2(b1+b2) + 1 = 0, traced in the
    # rotated coordinates d = b1-b2, s = -(1+d^2)/2
    para_pts = []
    span = max(abs(view.b1_min), abs(view.b1_max), abs(view.b2_min), abs(view.b2_max), 1.0)
    steps = 400
    for k in range(steps + 1):
        d = -4 * span + 8 * span * k / steps
        s = -(1 + d * d) / 2
        b1 = (s + d) / 2
        b2 = (s - d) / 2
        if view.contains(b1, b2, pad=0.05 * span):
            para_pts.append(view.to_px(b1, b2))
    if len(para_pts) >= 2:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in para_pts)
        out.append(
            f'<polyline fill="none" stroke="#0066cc" stroke-width="1.5" '
            f'stroke-dasharray="6,3" points="{pts}"/>'
        )
    # fold curve, split at infinities and viewport exits
    segment: list[tuple[float, float]] = []
    segments: list[list[tuple[float, float]]] = []
    for g in curve:
        ok = (
            not g.at_infinity
            and g.point is not None
            and math.isfinite(float(g.point[0]))
            and math.isfinite(float(g.point[1]))
            and view.contains(float(g.point[0]), float(g.point[1]), pad=0.5 * span)
        )
        if ok:
            segment.append(view.to_px(float(g.point[0]), float(g.point[1])))
        elif segment:
            segments.append(segment)
            segment = []
    if segment:
        segments.append(segment)
    for seg in segments:
        if len(seg) >= 2:
            pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in seg)
            out.append(
                f'<polyline fill="none" stroke="#cc0000" stroke-width="1.5" points="{pts}"/>'
            )
    # cusp markers
    for b1, b2 in cusps:
        if view.contains(b1, b2):
            x, y = view.to_px(b1, b2)
            out.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4.0" fill="none" '
                f'stroke="#cc0000" stroke-width="1.5"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
