"""Standalone SVG rendering of the ellipse, its offset curves and evolute."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import (
    Ellipse,
    cusp_angle,
    inner_offset_loops,
    offset_point,
    sample_ellipse,
    sample_evolute,
    sample_offset_curve,
)

__all__ = ["CurveScene", "build_curve_scene", "render_svg"]

#: Fraction of the figure span left clear on every side of the viewport.
MARGIN = 0.08

_STYLES = {
    "ellipse": 'fill="none" stroke="#202020" stroke-width="{w}"',
    "outer": 'fill="none" stroke="#1f77b4" stroke-width="{w}"',
    "inner-containment": 'fill="none" stroke="#d62728" stroke-width="{w}"',
    "inner-four": 'fill="none" stroke="#ff7f0e" stroke-width="{w}" stroke-dasharray="{d}"',
    "evolute": 'fill="none" stroke="#2ca02c" stroke-width="{w}" stroke-dasharray="{d}"',
}


@dataclass(frozen=True)
class CurveScene:
    """Plot-ready polylines in mathematical coordinates.

    ``polylines`` pairs a style tag with an ``(n, 2)`` point array; closed
    curves repeat their first point.  ``markers`` holds cusp positions of the
    inner offset (empty when there are none).  ``bounds`` is the padded
    viewport ``(xmin, ymin, xmax, ymax)``.
    """

    polylines: tuple[tuple[str, np.ndarray], ...]
    markers: tuple[tuple[float, float], ...]
    bounds: tuple[float, float, float, float]


def _closed(points: np.ndarray) -> np.ndarray:
    return np.vstack((points, points[:1]))


def build_curve_scene(e: Ellipse, r: float, samples: int = 1024) -> CurveScene:
    """Assemble the curve gallery for one ellipse/radius pair.

    Draws the ellipse, the outer offset, the inner offset split into loops
    (containment loop and four-intersection loops styled apart), the evolute,
    and markers at the four inner-offset cusps when the radius lies between
    the extreme curvature radii.
    """
    if samples < 64:
        raise DomainError(f"need at least 64 samples per curve, got {samples!r}")
    polylines: list[tuple[str, np.ndarray]] = [
        ("ellipse", _closed(sample_ellipse(e, samples))),
        ("outer", _closed(sample_offset_curve(e, r, +1, samples))),
    ]
    for kind, points in inner_offset_loops(e, r, samples):
        tag = "inner-containment" if kind == "containment" else "inner-four"
        polylines.append((tag, _closed(points)))
    polylines.append(("evolute", _closed(sample_evolute(e, samples))))

    markers: tuple[tuple[float, float], ...] = ()
    lam = cusp_angle(e, r)
    if lam is not None:
        markers = tuple(
            offset_point(e, r, -1, phi)
            for phi in (lam, math.pi - lam, math.pi + lam, 2.0 * math.pi - lam)
        )

    stacked = np.vstack([pts for _, pts in polylines])
    xmin, ymin = stacked.min(axis=0)
    xmax, ymax = stacked.max(axis=0)
    pad = MARGIN * max(xmax - xmin, ymax - ymin)
    bounds = (
        float(xmin - pad),
        float(ymin - pad),
        float(xmax + pad),
        float(ymax + pad),
    )
    return CurveScene(polylines=tuple(polylines), markers=markers, bounds=bounds)


def render_svg(scene: CurveScene, width: int = 720) -> str:
    """Render a scene as an SVG 1.1 document string.

    The y-axis is flipped into SVG's screen convention; all coordinates are
    written with fixed precision so identical scenes give identical bytes.
    """
    xmin, ymin, xmax, ymax = scene.bounds
    span_x = xmax - xmin
    span_y = ymax - ymin
    scale = width / span_x
    height = span_y * scale
    stroke = max(1.0, 0.002 * width)
    dash = f"{4.0 * stroke:.2f} {3.0 * stroke:.2f}"

    def to_px(points: np.ndarray) -> np.ndarray:
        px = (points[:, 0] - xmin) * scale
        py = (ymax - points[:, 1]) * scale
        return np.column_stack((px, py))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        f'<rect x="0" y="0" width="{width:.2f}" height="{height:.2f}" fill="#ffffff"/>',
    ]
    for tag, points in scene.polylines:
        style = _STYLES[tag].format(w=f"{stroke:.2f}", d=dash)
        coords = " ".join(f"{x:.4f},{y:.4f}" for x, y in to_px(points))
        lines.append(f'<polyline class="{tag}" {style} points="{coords}"/>')
    if scene.markers:
        pts = to_px(np.asarray(scene.markers))
        for x, y in pts:
            lines.append(
                f'<circle class="cusp" cx="{x:.4f}" cy="{y:.4f}" '
                f'r="{2.5 * stroke:.2f}" fill="#d62728" stroke="none"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
