"""Static SVG drawings of a stratified point set.

Points are colored by depth, layer edges and contour arcs are optional
overlays.  Output is deterministic: same input bytes, same SVG bytes.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .contours import LevelSet
from .depth import DepthLabels, Layer

__all__ = ["render_svg"]

_CANVAS = 720.0
_MARGIN = 36.0

# depth 1, 2, 3, ... cycle through this palette
_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def _color(depth: int) -> str:
    return _PALETTE[(depth - 1) % len(_PALETTE)]


class _Frame:
    """World-to-screen mapping with a flipped y axis."""

    def __init__(self, coords: np.ndarray, extra: float = 0.0):
        lo = coords.min(axis=0) - extra
        hi = coords.max(axis=0) + extra
        span = max(float(hi[0] - lo[0]), float(hi[1] - lo[1]), 1e-9)
        self.scale = (_CANVAS - 2.0 * _MARGIN) / span
        self.x0 = float(lo[0])
        self.y1 = float(hi[1])

    def x(self, wx: float) -> float:
        return _MARGIN + (wx - self.x0) * self.scale

    def y(self, wy: float) -> float:
        return _MARGIN + (self.y1 - wy) * self.scale


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_svg(
    points: np.ndarray,
    labels: DepthLabels,
    layer_seq: Optional[Sequence[Layer]] = None,
    level_set: Optional[LevelSet] = None,
    show_layers: bool = False,
    show_levels: bool = False,
) -> str:
    extra = 0.0
    if show_levels and level_set is not None:
        radii = [
            arc.circle.radius
            for contour in level_set.contours
            for curve in contour.curves
            for arc in curve
        ]
        extra = max(radii) * 0.15 if radii else 0.0
    frame = _Frame(points, extra)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{int(_CANVAS)}" height="{int(_CANVAS)}" '
        f'viewBox="0 0 {int(_CANVAS)} {int(_CANVAS)}">',
        f'<rect width="{int(_CANVAS)}" height="{int(_CANVAS)}" fill="white"/>',
    ]

    if show_layers and layer_seq is not None:
        for layer in layer_seq:
            color = _color(layer.index)
            for a, b in layer.edges:
                out.append(
                    f'<line x1="{_fmt(frame.x(points[a][0]))}" y1="{_fmt(frame.y(points[a][1]))}" '
                    f'x2="{_fmt(frame.x(points[b][0]))}" y2="{_fmt(frame.y(points[b][1]))}" '
                    f'stroke="{color}" stroke-width="1.2" opacity="0.7"/>'
                )

    if show_levels and level_set is not None:
        for contour in level_set.contours:
            color = _color(contour.level)
            if contour.level == 1:
                pts = " ".join(
                    f"{_fmt(frame.x(x))},{_fmt(frame.y(y))}" for x, y in contour.polygon.tolist()
                )
                out.append(
                    f'<polygon points="{pts}" fill="none" stroke="{color}" stroke-width="1.6"/>'
                )
                continue
            for curve in contour.curves:
                path = []
                first = curve[0].start
                path.append(f"M {_fmt(frame.x(first.x))} {_fmt(frame.y(first.y))}")
                for arc in curve:
                    span = arc.span if arc.span > 0.0 else math.pi
                    end = arc.end
                    r = arc.circle.radius * frame.scale
                    large = 1 if span > math.pi else 0
                    # world-ccw arcs run clockwise on the flipped screen axis
                    path.append(
                        f"A {_fmt(r)} {_fmt(r)} 0 {large} 0 "
                        f"{_fmt(frame.x(end.x))} {_fmt(frame.y(end.y))}"
                    )
                path.append("Z")
                out.append(
                    f'<path d="{" ".join(path)}" fill="none" stroke="{color}" stroke-width="1.6"/>'
                )
        for mx, my in level_set.medians:
            out.append(
                f'<circle cx="{_fmt(frame.x(mx))}" cy="{_fmt(frame.y(my))}" r="5" '
                f'fill="none" stroke="black" stroke-width="1.5"/>'
            )

    for i, (x, y) in enumerate(points.tolist()):
        out.append(
            f'<circle cx="{_fmt(frame.x(x))}" cy="{_fmt(frame.y(y))}" r="3" '
            f'fill="{_color(labels[i])}"><title>{i}: depth {labels[i]}</title></circle>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
