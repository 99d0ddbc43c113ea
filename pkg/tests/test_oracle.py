"""Unit tests for the root-counting classifier and the region cross-check."""

import math

import numpy as np
import pytest

from ellipse_circle import (
    Ellipse,
    Relation,
    classify,
    classify_batch,
    count_intersections,
    offset_curve_distance,
    region_cross_check,
)
from ellipse_circle.errors import DegeneratePoseError, DomainError

E21 = Ellipse(2.0, 1.0)


def test_relation_codes_are_stable():
    # the integer codes appear in reports and batch arrays, so pin them
    assert int(Relation.DISJOINT_OUTSIDE) == 0
    assert int(Relation.ELLIPSE_INSIDE_CIRCLE) == 1
    assert int(Relation.CIRCLE_INSIDE_ELLIPSE) == 2
    assert int(Relation.TWO_POINTS) == 3
    assert int(Relation.FOUR_POINTS) == 4
    assert int(Relation.DEGENERATE) == 5


def test_concentric_circle_meets_ellipse_four_times():
    # x^2/4 + y^2 = 1 and x^2 + y^2 = 2.25 solve to x^2 = 5/3, y^2 = 7/12,
    # so all four sign choices are true intersection points.
    assert classify(E21, 1.5, (0.0, 0.0)) is Relation.FOUR_POINTS
    assert count_intersections(E21, 1.5, (0.0, 0.0)) == 4


def test_small_concentric_circle_is_contained():
    assert classify(E21, 0.4, (0.0, 0.0)) is Relation.CIRCLE_INSIDE_ELLIPSE
    assert count_intersections(E21, 0.4, (0.0, 0.0)) == 0


def test_far_pose_is_disjoint():
    assert classify(E21, 0.4, (10.0, 10.0)) is Relation.DISJOINT_OUTSIDE


def test_large_circle_swallows_ellipse():
    assert classify(Ellipse(1.0, 1.0), 3.0, (0.0, 0.0)) is Relation.ELLIPSE_INSIDE_CIRCLE
    assert classify(E21, 5.0, (0.0, 0.5)) is Relation.ELLIPSE_INSIDE_CIRCLE


def test_crossing_near_a_vertex():
    assert classify(E21, 1.5, (3.0, 0.0)) is Relation.TWO_POINTS
    assert count_intersections(E21, 1.5, (3.0, 0.0)) == 2


def test_external_tangency_is_degenerate():
    assert classify(E21, 1.5, (3.5, 0.0)) is Relation.DEGENERATE
    with pytest.raises(DegeneratePoseError):
        count_intersections(E21, 1.5, (3.5, 0.0))


def test_internal_tangency_is_degenerate():
    # circle of radius 0.4 tangent to the ellipse from inside at the top
    assert classify(E21, 0.4, (0.0, 0.6)) is Relation.DEGENERATE


def test_classification_respects_fourfold_symmetry():
    rng = np.random.default_rng(42)
    for _ in range(50):
        x = float(rng.uniform(0.0, 3.5))
        y = float(rng.uniform(0.0, 3.5))
        base = classify(E21, 1.5, (x, y))
        for sx, sy in ((-1, 1), (1, -1), (-1, -1)):
            assert classify(E21, 1.5, (sx * x, sy * y)) is base


def test_batch_agrees_with_scalar_classifier():
    rng = np.random.default_rng(7)
    xs = rng.uniform(-3.5, 3.5, 300)
    ys = rng.uniform(-3.5, 3.5, 300)
    codes = classify_batch(E21, 1.5, xs, ys)
    assert codes.shape == (300,)
    for i in range(300):
        scalar = classify(E21, 1.5, (float(xs[i]), float(ys[i])))
        assert codes[i] == int(scalar), (xs[i], ys[i])


def test_batch_input_validation():
    with pytest.raises(DomainError):
        classify_batch(E21, 1.5, np.zeros((2, 2)), np.zeros((2, 2)))
    with pytest.raises(DomainError):
        classify(E21, -1.0, (0.0, 0.0))
    with pytest.raises(DomainError):
        classify(E21, 1.0, (0.0, 0.0), samples=32)


def test_region_route_matches_root_counting():
    rng = np.random.default_rng(11)
    for r in (0.3, 0.8, 1.5, 3.0, 5.0):
        reach = 2.0 + r
        disagreements = 0
        for _ in range(400):
            pose = (float(rng.uniform(-reach, reach)), float(rng.uniform(-reach, reach)))
            got = classify(E21, r, pose)
            if got is Relation.DEGENERATE:
                continue
            if got is not region_cross_check(E21, r, pose):
                disagreements += 1
                # any disagreement must hug an offset curve
                assert offset_curve_distance(E21, r, pose) <= 1e-6
        assert disagreements <= 1, r


def test_region_route_on_landmark_poses():
    assert region_cross_check(E21, 1.5, (0.0, 0.0)) is Relation.FOUR_POINTS
    assert region_cross_check(E21, 0.4, (0.0, 0.0)) is Relation.CIRCLE_INSIDE_ELLIPSE
    assert region_cross_check(E21, 0.4, (10.0, 10.0)) is Relation.DISJOINT_OUTSIDE
    assert region_cross_check(E21, 5.0, (0.0, 0.5)) is Relation.ELLIPSE_INSIDE_CIRCLE
    assert region_cross_check(E21, 1.5, (3.0, 0.0)) is Relation.TWO_POINTS


def test_offset_curve_distance_vanishes_on_the_curves():
    from ellipse_circle import offset_point

    for phi in (0.0, 0.4, 1.1):
        pose = offset_point(E21, 1.5, +1, phi)
        assert offset_curve_distance(E21, 1.5, pose) < 1e-6
    # the centre of the case-3 configuration is well inside both curves
    assert offset_curve_distance(E21, 1.5, (0.0, 0.0)) > 0.1


def test_degenerate_band_is_narrow():
    # a pose a hair away from tangency must classify as a clean crossing
    assert classify(E21, 1.5, (3.5 - 1e-6, 0.0)) is Relation.TWO_POINTS
    assert classify(E21, 1.5, (3.5 + 1e-6, 0.0)) is Relation.DISJOINT_OUTSIDE
