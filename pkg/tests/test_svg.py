"""Unit tests for the curve-scene builder and SVG renderer."""

import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from ellipse_circle import Ellipse, offset_point
from ellipse_circle.errors import DomainError
from ellipse_circle.svg import MARGIN, build_curve_scene, render_svg

E21 = Ellipse(2.0, 1.0)


def test_scene_bounds_leave_the_required_margin():
    scene = build_curve_scene(E21, 1.5)
    xmin, ymin, xmax, ymax = scene.bounds
    pts = np.vstack([p for _, p in scene.polylines])
    span = max(np.ptp(pts[:, 0]), np.ptp(pts[:, 1]))
    # every point clear of the viewport edge by at least 5% of the span
    gap = 0.05 * span
    assert pts[:, 0].min() - xmin >= gap and xmax - pts[:, 0].max() >= gap
    assert pts[:, 1].min() - ymin >= gap and ymax - pts[:, 1].max() >= gap
    assert MARGIN >= 0.05


def test_scene_polyline_tags_by_case():
    tags1 = [tag for tag, _ in build_curve_scene(E21, 0.3).polylines]
    assert tags1 == ["ellipse", "outer", "inner-containment", "evolute"]
    tags2 = [tag for tag, _ in build_curve_scene(E21, 0.8).polylines]
    assert tags2.count("inner-four") == 2
    assert tags2.count("inner-containment") == 1
    tags3 = [tag for tag, _ in build_curve_scene(E21, 1.5).polylines]
    assert tags3 == ["ellipse", "outer", "inner-four", "evolute"]


def test_scene_markers_sit_on_the_inner_offset_cusps():
    scene = build_curve_scene(E21, 1.5)
    assert len(scene.markers) == 4
    lam = 0.98282170824046367
    assert scene.markers[0] == pytest.approx(
        offset_point(E21, 1.5, -1, lam), abs=1e-12
    )
    xs = sorted(round(m[0], 10) for m in scene.markers)
    # four-fold symmetry of the cusp set
    assert xs[0] == -xs[3] and xs[1] == -xs[2]


def test_scene_rejects_coarse_sampling():
    with pytest.raises(DomainError):
        build_curve_scene(E21, 1.5, samples=32)


def test_polylines_are_closed():
    scene = build_curve_scene(E21, 0.8, samples=256)
    for tag, pts in scene.polylines:
        assert np.allclose(pts[0], pts[-1]), tag


def test_render_is_wellformed_and_deterministic():
    scene = build_curve_scene(E21, 1.5, samples=128)
    doc = render_svg(scene)
    assert doc == render_svg(scene)
    root = ET.fromstring(doc)
    assert root.attrib["version"] == "1.1"
    polylines = [el for el in root.iter() if el.tag.endswith("polyline")]
    assert [el.attrib["class"] for el in polylines] == [
        "ellipse", "outer", "inner-four", "evolute",
    ]


def test_render_flips_y_axis():
    scene = build_curve_scene(E21, 1.5, samples=128)
    root = ET.fromstring(render_svg(scene))
    height = float(root.attrib["height"])
    width = float(root.attrib["width"])
    for el in root.iter():
        if el.tag.endswith("polyline"):
            coords = np.array(
                [list(map(float, pair.split(","))) for pair in
                 el.attrib["points"].split()]
            )
            assert coords[:, 0].min() >= 0 and coords[:, 0].max() <= width
            assert coords[:, 1].min() >= 0 and coords[:, 1].max() <= height
    # the topmost mathematical point must map near the top of the image
    ellipse_pts = scene.polylines[0][1]
    top_idx = int(np.argmax(ellipse_pts[:, 1]))
    xmin, ymin, xmax, ymax = scene.bounds
    scale = width / (xmax - xmin)
    mapped_y = (ymax - ellipse_pts[top_idx, 1]) * scale
    assert mapped_y < height / 2
