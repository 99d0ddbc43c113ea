"""Closed-form position areas, kinematic measures, and hitting probabilities.

For a fixed direction of the ellipse, the positions of the circle centre
(equivalently, of the moving ellipse) that realise a given intersection
pattern fill plane regions bounded by the offset curves of the ellipse at
distance ``r``.  This module evaluates those region areas in closed form for
each of the five radius regimes, lifts them to kinematic measures over
positions and rotations, and normalises the measures to probabilities for a
lattice of circles spanned by ``s`` and ``t`` with angle ``sigma``.

The line-segment limit (an ellipse squashed onto its major axis) has its own
closed forms and is exposed by the ``segment_*`` functions.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .elliptic import complete_elliptic_e, incomplete_elliptic_e
from .errors import (
    AssumptionError,
    DomainError,
    InternalConsistencyError,
    QuadratureError,
)
from .geometry import (
    Ellipse,
    case_classify,
    double_point_angle_xaxis,
    double_point_angle_yaxis,
    support,
    support_d2,
)

__all__ = [
    "Lattice",
    "SegmentSpec",
    "AreaSet",
    "MeasureSet",
    "ProbabilitySet",
    "SegmentProbabilitySet",
    "loop_area_antiderivative",
    "signed_inner_area",
    "outer_offset_area",
    "areas",
    "measures",
    "probabilities",
    "expected_intersections",
    "signed_inner_area_quadrature",
    "segment_containment_measure",
    "segment_measures",
    "segment_probabilities",
]

logger = logging.getLogger(__name__)

_TWO_PI = 2.0 * math.pi
_HALF_PI = math.pi / 2.0

#: Tiny negative closed-form values are rounding noise near a regime
#: boundary; anything below this magnitude is a genuine inconsistency.
NEGATIVE_AREA_TOL = 1e-9

#: Agreement required between the direct measure formulas and 2*pi times
#: the corresponding areas.
CROSS_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class Lattice:
    """Point lattice spanned by ``(s, 0)`` and ``(t cos sigma, t sin sigma)``."""

    s: float
    t: float
    sigma: float = _HALF_PI

    def __post_init__(self) -> None:
        if self.s <= 0.0 or self.t <= 0.0:
            raise DomainError(f"lattice spans must be positive, got s={self.s!r}, t={self.t!r}")
        if not 0.0 < self.sigma <= _HALF_PI:
            raise DomainError(f"lattice angle must lie in (0, pi/2], got {self.sigma!r}")

    @property
    def cell_area(self) -> float:
        return self.s * self.t * math.sin(self.sigma)


@dataclass(frozen=True)
class SegmentSpec:
    """Line segment of length ``l`` thrown against circles of radius ``r``."""

    l: float
    r: float

    def __post_init__(self) -> None:
        if self.l <= 0.0 or self.r <= 0.0:
            raise DomainError(f"need l > 0 and r > 0, got l={self.l!r}, r={self.r!r}")


@dataclass(frozen=True)
class AreaSet:
    """Fixed-direction position areas by intersection pattern.

    ``circle_in_ellipse`` and ``ellipse_in_circle`` are the two containment
    patterns; at most one of them is nonzero.  ``outer`` is the area enclosed
    by the outer offset curve and ``signed_inner`` the signed area enclosed by
    the inner one (negative exactly when the curve is swept clockwise on
    balance).
    """

    case: int
    circle_in_ellipse: float
    ellipse_in_circle: float
    two_points: float
    four_points: float
    outer: float
    signed_inner: float


@dataclass(frozen=True)
class MeasureSet:
    """Kinematic measures of the pose sets with 0 (contained), 2, 4 crossings."""

    containment: float
    two_points: float
    four_points: float
    flavor: str  # "circle_in_ellipse", "ellipse_in_circle" or "none"


@dataclass(frozen=True)
class ProbabilitySet:
    """Hitting probabilities for one ellipse thrown onto a circle lattice."""

    p_zero: float
    p_two: float
    p_four: float
    p_contained: float
    p_disjoint: float


@dataclass(frozen=True)
class SegmentProbabilitySet:
    """Hitting probabilities for a segment thrown onto a circle lattice."""

    p_zero: float
    p_one: float
    p_two: float
    p_contained: float
    p_disjoint: float


# -- closed forms for the ellipse --------------------------------------------


def loop_area_antiderivative(e: Ellipse, r: float, phi: float) -> float:
    """Antiderivative accumulating signed loop area of the inner offset.

    This is the function whose differences between self-intersection angles
    give the signed areas of individual loops of the inner offset curve:

        2 r^2 phi + 2 a b arctan((b/a) tan phi) - 4 r a E(phi, eps)
            + r a eps^2 sin(2 phi) / sqrt(1 - eps^2 sin^2 phi)

    The arctangent is evaluated as ``atan2(b sin phi, a cos phi)`` so the
    branch stays continuous up to ``phi = pi/2``, where the term equals
    ``pi a b``.

    Raises:
        DomainError: If ``phi`` is outside ``[0, pi/2]``.
    """
    if not 0.0 <= phi <= _HALF_PI:
        raise DomainError(f"angle must lie in [0, pi/2], got {phi!r}")
    if r <= 0.0:
        raise DomainError(f"radius must be positive, got {r!r}")
    eps = e.eccentricity
    eps2 = eps * eps
    s, c = math.sin(phi), math.cos(phi)
    value = 2.0 * r * r * phi
    value += 2.0 * e.a * e.b * math.atan2(e.b * s, e.a * c)
    value -= 4.0 * r * e.a * incomplete_elliptic_e(phi, eps)
    value += r * e.a * eps2 * math.sin(2.0 * phi) / math.sqrt(1.0 - eps2 * s * s)
    return value


def signed_inner_area(e: Ellipse, r: float) -> float:
    """Signed area enclosed by the inner offset: ``pi r^2 + pi a b - 4 r a E(eps)``."""
    if r <= 0.0:
        raise DomainError(f"radius must be positive, got {r!r}")
    return (
        math.pi * r * r
        + math.pi * e.a * e.b
        - 4.0 * r * e.a * complete_elliptic_e(e.eccentricity)
    )


def outer_offset_area(e: Ellipse, r: float) -> float:
    """Area enclosed by the outer offset: ``pi r^2 + pi a b + 4 r a E(eps)``."""
    if r <= 0.0:
        raise DomainError(f"radius must be positive, got {r!r}")
    return (
        math.pi * r * r
        + math.pi * e.a * e.b
        + 4.0 * r * e.a * complete_elliptic_e(e.eccentricity)
    )


def _clamped(value: float, label: str) -> float:
    """Clamp rounding-level negatives to zero; reject anything worse."""
    if value >= 0.0:
        return value
    if value >= -NEGATIVE_AREA_TOL:
        logger.warning("clamping tiny negative %s = %.3e to 0", label, value)
        return 0.0
    raise InternalConsistencyError(f"{label} = {value!r} is negative beyond tolerance")


def _area_row(e: Ellipse, r: float) -> tuple[int, float, float, float, float]:
    """Unclamped ``(case, circle_in_ellipse, ellipse_in_circle, two, four)``."""
    case = case_classify(e, r)
    a_star = signed_inner_area(e, r)
    band = 8.0 * r * e.a * complete_elliptic_e(e.eccentricity)
    full = _TWO_PI * r * r + _TWO_PI * e.a * e.b
    if case == 1:
        return case, a_star, 0.0, band, 0.0
    if case == 2:
        f_alpha = loop_area_antiderivative(e, r, double_point_angle_xaxis(e, r))
        return case, a_star - f_alpha, 0.0, full - 2.0 * (a_star - f_alpha), -f_alpha
    if case == 3:
        return case, 0.0, 0.0, full, -a_star
    if case == 4:
        f_beta = loop_area_antiderivative(e, r, double_point_angle_yaxis(e, r))
        return case, 0.0, f_beta, full - 2.0 * f_beta, f_beta - a_star
    return case, 0.0, a_star, band, 0.0


def areas(e: Ellipse, r: float) -> AreaSet:
    """Fixed-direction position areas for every intersection pattern.

    Dispatches on the five radius regimes.  Exact zeros are returned for
    patterns that cannot occur in a regime; values that come out a hair
    negative through floating-point cancellation (possible within
    ``NEGATIVE_AREA_TOL`` of a regime boundary) are clamped to zero.
    """
    case, cie, eic, two, four = _area_row(e, r)
    return AreaSet(
        case=case,
        circle_in_ellipse=_clamped(cie, "circle-in-ellipse area"),
        ellipse_in_circle=_clamped(eic, "ellipse-in-circle area"),
        two_points=_clamped(two, "two-point area"),
        four_points=_clamped(four, "four-point area"),
        outer=outer_offset_area(e, r),
        signed_inner=signed_inner_area(e, r),
    )


def measures(e: Ellipse, r: float) -> MeasureSet:
    """Kinematic measures of the contained / two-point / four-point pose sets.

    The measures follow from the containment measure ``m_i`` via

        m_2 = 4 pi^2 r^2 + 4 pi^2 a b - 2 m_i
        m_4 = 8 pi r a E(eps) - 2 pi^2 r^2 - 2 pi^2 a b + m_i

    and are cross-checked against ``2 pi`` times the fixed-direction areas.

    Raises:
        InternalConsistencyError: If the cross-check fails beyond tolerance.
    """
    case, cie, eic, two, four = _area_row(e, r)
    if case in (4, 5):
        m_i, flavor = _TWO_PI * eic, "ellipse_in_circle"
    elif case == 3:
        m_i, flavor = 0.0, "none"
    else:
        m_i, flavor = _TWO_PI * cie, "circle_in_ellipse"
    pi2 = math.pi * math.pi
    m_2 = 4.0 * pi2 * r * r + 4.0 * pi2 * e.a * e.b - 2.0 * m_i
    m_4 = (
        8.0 * math.pi * r * e.a * complete_elliptic_e(e.eccentricity)
        - 2.0 * pi2 * r * r
        - 2.0 * pi2 * e.a * e.b
        + m_i
    )
    err_2 = abs(m_2 - _TWO_PI * two)
    err_4 = abs(m_4 - _TWO_PI * four)
    if err_2 > CROSS_CHECK_TOL or err_4 > CROSS_CHECK_TOL:
        raise InternalConsistencyError(
            f"measure/area cross-check failed for r={r!r}: "
            f"|m_2 - 2 pi A_2| = {err_2:.3e}, |m_4 - 2 pi A_4| = {err_4:.3e}"
        )
    return MeasureSet(
        containment=_clamped(m_i, "containment measure"),
        two_points=_clamped(m_2, "two-point measure"),
        four_points=_clamped(m_4, "four-point measure"),
        flavor=flavor,
    )


def _require_one_circle(reach: float, lat: Lattice, what: str) -> None:
    limit = min(lat.s, lat.t)
    if 2.0 * reach > limit:
        raise AssumptionError(
            f"one-circle assumption violated for the {what}: "
            f"2 (a + r) = {2.0 * reach!r} exceeds min(s, t) = {limit!r}"
        )


def probabilities(e: Ellipse, r: float, lat: Lattice) -> ProbabilitySet:
    """Hitting probabilities for the ellipse against the circle lattice.

    Requires the one-circle condition ``2 (a + r) <= min(s, t)`` so that the
    ellipse can meet at most one lattice circle at a time.

    Raises:
        AssumptionError: If the one-circle condition fails.
    """
    _require_one_circle(e.a + r, lat, "ellipse")
    ms = measures(e, r)
    m_total = _TWO_PI * lat.cell_area
    pi2 = math.pi * math.pi
    p_two = ms.two_points / m_total
    p_four = ms.four_points / m_total
    p_contained = ms.containment / m_total
    p_disjoint = 1.0 - (
        2.0 * pi2 * r * r
        + 2.0 * pi2 * e.a * e.b
        + 8.0 * math.pi * r * e.a * complete_elliptic_e(e.eccentricity)
    ) / m_total
    return ProbabilitySet(
        p_zero=1.0 - p_two - p_four,
        p_two=p_two,
        p_four=p_four,
        p_contained=p_contained,
        p_disjoint=p_disjoint,
    )


def expected_intersections(e: Ellipse, r: float, lat: Lattice) -> float:
    """Mean number of boundary crossings, ``16 r a E(eps) / (s t sin sigma)``."""
    _require_one_circle(e.a + r, lat, "ellipse")
    return 16.0 * r * e.a * complete_elliptic_e(e.eccentricity) / lat.cell_area


def signed_inner_area_quadrature(e: Ellipse, r: float, panels: int = 2048) -> float:
    """Quadrature twin of :func:`signed_inner_area` for cross-validation.

    Integrates ``(p - r)(p - r + p'') / 2`` over a full turn with the
    periodic trapezoidal rule at ``panels`` and ``2 * panels`` nodes (the
    integrand is smooth and periodic, so the rule converges geometrically)
    and requires the two estimates to agree.

    Raises:
        QuadratureError: If the refinement changes the result beyond 1e-9.
    """
    if panels < 1024:
        raise DomainError(f"need at least 1024 panels, got {panels!r}")
    if r <= 0.0:
        raise DomainError(f"radius must be positive, got {r!r}")
    estimates = []
    for n in (panels, 2 * panels):
        phi = np.arange(n) * (_TWO_PI / n)
        p = support(e, phi)
        integrand = (p - r) * (p - r + support_d2(e, phi))
        estimates.append(0.5 * float(integrand.sum()) * (_TWO_PI / n))
    if abs(estimates[1] - estimates[0]) > 1e-9 * max(1.0, abs(estimates[1])):
        raise QuadratureError(
            f"inner-area quadrature did not converge: "
            f"{estimates[0]!r} vs {estimates[1]!r}"
        )
    return estimates[1]


# -- closed forms for the segment limit --------------------------------------


def segment_containment_measure(seg: SegmentSpec) -> float:
    """Kinematic measure of poses with the segment inside a circle.

    Zero when the segment is too long to fit (``l >= 2 r``); otherwise
    ``2 pi (pi r^2 - 2 r^2 arcsin(l / 2r) - l sqrt(r^2 - l^2/4))``.
    """
    if seg.l >= 2.0 * seg.r:
        return 0.0
    half = 0.5 * seg.l
    value = (
        math.pi * seg.r * seg.r
        - 2.0 * seg.r * seg.r * math.asin(half / seg.r)
        - seg.l * math.sqrt(seg.r * seg.r - half * half)
    )
    return _TWO_PI * value


def segment_measures(seg: SegmentSpec) -> tuple[float, float]:
    """Measures ``(m_1, m_2)`` of one-crossing and two-crossing segment poses."""
    m_i = segment_containment_measure(seg)
    pi2 = math.pi * math.pi
    m_1 = 4.0 * pi2 * seg.r * seg.r - 2.0 * m_i
    m_2 = 4.0 * math.pi * seg.r * seg.l - 2.0 * pi2 * seg.r * seg.r + m_i
    return _clamped(m_1, "segment one-point measure"), _clamped(
        m_2, "segment two-point measure"
    )


def segment_probabilities(seg: SegmentSpec, lat: Lattice) -> SegmentProbabilitySet:
    """Hitting probabilities for a segment thrown onto the circle lattice.

    Requires ``2 (l/2 + r) <= min(s, t)`` (the segment analogue of the
    one-circle condition).

    Raises:
        AssumptionError: If that condition fails.
    """
    _require_one_circle(0.5 * seg.l + seg.r, lat, "segment")
    m_total = _TWO_PI * lat.cell_area
    m_i = segment_containment_measure(seg)
    m_1, m_2 = segment_measures(seg)
    pi2 = math.pi * math.pi
    p_one = m_1 / m_total
    p_two = m_2 / m_total
    p_contained = m_i / m_total
    p_disjoint = 1.0 - (
        2.0 * pi2 * seg.r * seg.r + 4.0 * math.pi * seg.r * seg.l
    ) / m_total
    return SegmentProbabilitySet(
        p_zero=1.0 - p_one - p_two,
        p_one=p_one,
        p_two=p_two,
        p_contained=p_contained,
        p_disjoint=p_disjoint,
    )
