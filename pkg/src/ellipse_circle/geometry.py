"""Support-function geometry of an axis-aligned ellipse and its offset curves.

The ellipse with semi-axes ``a >= b`` is described through its support
function ``p(phi) = sqrt(a^2 cos^2 phi + b^2 sin^2 phi)``, the distance from
the centre to the tangent line whose outward normal points in direction
``phi``.  Everything else here (boundary points, parallel offset curves at
distance ``r``, the evolute, cusp and self-intersection angles of the inner
offset) is derived from ``p`` and its first two derivatives.

The radius ``r`` of the companion circle falls into one of five regimes
relative to the curvature radii ``b^2/a <= rho <= a^2/b`` of the ellipse:

1. ``r <= b^2/a``          inner offset is a simple convex curve
2. ``b^2/a < r < b``       inner offset self-intersects on the x-axis
3. ``b <= r <= a``         inner offset has four cusps and no double point
4. ``a < r < a^2/b``       inner offset self-intersects on the y-axis
5. ``a^2/b <= r``          inner offset is simple again, swept the other way

These regime numbers are used throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CaseError, DomainError

__all__ = [
    "Ellipse",
    "support",
    "support_d1",
    "support_d2",
    "ellipse_point",
    "offset_point",
    "evolute_point",
    "curvature_radius_bounds",
    "cusp_angle",
    "case_classify",
    "double_point_angle_xaxis",
    "double_point_angle_yaxis",
    "sample_ellipse",
    "sample_offset_curve",
    "sample_offset_arc",
    "sample_evolute",
    "inner_offset_loops",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Ellipse:
    """Axis-aligned ellipse ``x^2/a^2 + y^2/b^2 = 1`` with ``a >= b > 0``."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.a >= self.b > 0.0:
            raise DomainError(
                f"semi-axes must satisfy a >= b > 0, got a={self.a!r}, b={self.b!r}"
            )

    @property
    def eccentricity(self) -> float:
        """Numerical eccentricity ``sqrt(a^2 - b^2) / a`` in ``[0, 1)``."""
        return math.sqrt(self.a * self.a - self.b * self.b) / self.a


def support(e: Ellipse, phi):
    """Support function ``p(phi)``; accepts scalars or numpy arrays."""
    return np.sqrt((e.a * np.cos(phi)) ** 2 + (e.b * np.sin(phi)) ** 2)


def support_d1(e: Ellipse, phi):
    """First derivative ``p'(phi) = -(a^2 - b^2) cos(phi) sin(phi) / p``."""
    ab2 = e.a * e.a - e.b * e.b
    return -ab2 * np.cos(phi) * np.sin(phi) / support(e, phi)


def support_d2(e: Ellipse, phi):
    """Second derivative ``p''(phi) = -(a^2 - b^2)(a^2 cos^4 - b^2 sin^4) / p^3``."""
    ab2 = e.a * e.a - e.b * e.b
    c, s = np.cos(phi), np.sin(phi)
    return -ab2 * (e.a * e.a * c**4 - e.b * e.b * s**4) / support(e, phi) ** 3


def ellipse_point(e: Ellipse, phi: float) -> tuple[float, float]:
    """Boundary point whose outward normal has direction ``phi``.

    In support-function parametrisation the point is
    ``(a^2 cos(phi) / p, b^2 sin(phi) / p)``.
    """
    p = support(e, phi)
    return float(e.a * e.a * np.cos(phi) / p), float(e.b * e.b * np.sin(phi) / p)


def offset_point(e: Ellipse, r: float, k: int, phi: float) -> tuple[float, float]:
    """Point of the offset curve at normal distance ``r`` from the ellipse.

    Args:
        e: The base ellipse.
        r: Offset distance, ``r > 0``.
        k: ``+1`` for the outer offset, ``-1`` for the inner one.
        phi: Normal direction in radians.

    Returns:
        ``((a^2/p + k r) cos(phi), (b^2/p + k r) sin(phi))``.
    """
    if k not in (1, -1):
        raise DomainError(f"offset sign must be +1 or -1, got {k!r}")
    if r <= 0.0:
        raise DomainError(f"offset distance must be positive, got {r!r}")
    p = support(e, phi)
    return (
        float((e.a * e.a / p + k * r) * np.cos(phi)),
        float((e.b * e.b / p + k * r) * np.sin(phi)),
    )


def evolute_point(e: Ellipse, phi: float) -> tuple[float, float]:
    """Centre of curvature for the boundary point with normal angle ``phi``."""
    p = support(e, phi)
    x = (e.a * e.a * np.cos(phi) / p) * (1.0 - e.b * e.b / (p * p))
    y = (e.b * e.b * np.sin(phi) / p) * (1.0 - e.a * e.a / (p * p))
    return float(x), float(y)


def curvature_radius_bounds(e: Ellipse) -> tuple[float, float]:
    """Minimum and maximum curvature radius, ``(b^2/a, a^2/b)``."""
    return e.b * e.b / e.a, e.a * e.a / e.b


def cusp_angle(e: Ellipse, r: float) -> float | None:
    """First normal angle at which the inner offset curve has a cusp.

    A cusp appears where the offset distance equals the curvature radius,
    ``p(phi) - r + p''(phi) = 0``; by symmetry the remaining cusps sit at
    ``pi - lambda``, ``pi + lambda`` and ``2 pi - lambda``.  Returns ``None``
    when ``r`` is outside ``[b^2/a, a^2/b]`` or the ellipse is a circle
    (for ``a = b`` the defining expression degenerates to 0/0).
    """
    if r <= 0.0:
        raise DomainError(f"radius must be positive, got {r!r}")
    if e.a == e.b:
        return None
    lo, hi = curvature_radius_bounds(e)
    if not lo <= r <= hi:
        return None
    a2, b2 = e.a * e.a, e.b * e.b
    arg = (2.0 * (a2 * b2 / r) ** (2.0 / 3.0) - a2 - b2) / (a2 - b2)
    return 0.5 * math.acos(min(1.0, max(-1.0, arg)))


def case_classify(e: Ellipse, r: float) -> int:
    """Return the radius regime 1..5 (see module docstring).

    The intervals partition ``r > 0``; for a circle (``a = b``) the middle
    three collapse and ``r = a`` is reported as regime 3.
    """
    if r <= 0.0:
        raise DomainError(f"radius must be positive, got {r!r}")
    if e.b <= r <= e.a:
        return 3
    if r <= e.b * e.b / e.a:
        return 1
    if r < e.b:
        return 2
    if r < e.a * e.a / e.b:
        return 4
    return 5


def double_point_angle_xaxis(e: Ellipse, r: float) -> float:
    """Smallest ``phi > 0`` where the inner offset meets the x-axis (regime 2).

    At this angle the y-coordinate of the inner offset vanishes away from the
    axis points, i.e. ``b^2 / p(phi) = r``, which creates the double points
    ``(+-x_d, 0)`` bounding the curve's middle loop.

    Raises:
        CaseError: If ``r`` is not in regime 2, ``b^2/a < r < b``.
    """
    if case_classify(e, r) != 2:
        raise CaseError(
            f"inner offset has no x-axis double point for r={r!r} "
            f"(requires b^2/a < r < b)"
        )
    num = math.sqrt(r * r * e.a * e.a - e.b**4)
    den = e.b * math.sqrt(e.b * e.b - r * r)
    return math.atan2(num, den)


def double_point_angle_yaxis(e: Ellipse, r: float) -> float:
    """Smallest ``phi > 0`` where the inner offset meets the y-axis (regime 4).

    Solves ``a^2 / p(phi) = r``; the double points are ``(0, +-y_d)``.

    Raises:
        CaseError: If ``r`` is not in regime 4, ``a < r < a^2/b``.
    """
    if case_classify(e, r) != 4:
        raise CaseError(
            f"inner offset has no y-axis double point for r={r!r} "
            f"(requires a < r < a^2/b)"
        )
    num = e.a * math.sqrt(r * r - e.a * e.a)
    den = math.sqrt(e.a**4 - r * r * e.b * e.b)
    return math.atan2(num, den)


# -- polyline sampling -------------------------------------------------------


def _offset_points(e: Ellipse, r: float, k: int, phi: np.ndarray) -> np.ndarray:
    p = support(e, phi)
    x = (e.a * e.a / p + k * r) * np.cos(phi)
    y = (e.b * e.b / p + k * r) * np.sin(phi)
    return np.column_stack((x, y))


def sample_ellipse(e: Ellipse, n: int) -> np.ndarray:
    """Ellipse boundary as an ``(n, 2)`` array over one full turn of ``phi``."""
    phi = np.arange(n) * (_TWO_PI / n)
    p = support(e, phi)
    return np.column_stack((e.a * e.a * np.cos(phi) / p, e.b * e.b * np.sin(phi) / p))


def sample_offset_curve(e: Ellipse, r: float, k: int, n: int) -> np.ndarray:
    """Offset curve sampled at ``n`` equally spaced normal angles.

    Points follow increasing ``phi`` over ``[0, 2 pi)``, so the polyline
    inherits the orientation of the parametrisation.  Intended for plotting
    and region tests; small ``n`` simply gives a coarse polygon.
    """
    if k not in (1, -1):
        raise DomainError(f"offset sign must be +1 or -1, got {k!r}")
    if r <= 0.0:
        raise DomainError(f"offset distance must be positive, got {r!r}")
    if n < 4:
        raise DomainError(f"need at least 4 sample points, got {n!r}")
    phi = np.arange(n) * (_TWO_PI / n)
    return _offset_points(e, r, k, phi)


def sample_offset_arc(
    e: Ellipse, r: float, k: int, phi0: float, phi1: float, n: int
) -> np.ndarray:
    """Offset arc for ``phi`` in ``[phi0, phi1]`` inclusive, ``n`` points."""
    if n < 2:
        raise DomainError(f"an arc needs at least 2 points, got {n!r}")
    return _offset_points(e, r, k, np.linspace(phi0, phi1, n))


def sample_evolute(e: Ellipse, n: int) -> np.ndarray:
    """Evolute (locus of curvature centres) as an ``(n, 2)`` polyline."""
    phi = np.arange(n) * (_TWO_PI / n)
    p = support(e, phi)
    x = (e.a * e.a * np.cos(phi) / p) * (1.0 - e.b * e.b / (p * p))
    y = (e.b * e.b * np.sin(phi) / p) * (1.0 - e.a * e.a / (p * p))
    return np.column_stack((x, y))


def inner_offset_loops(e: Ellipse, r: float, samples: int) -> list[tuple[str, np.ndarray]]:
    """Split the inner offset curve into its closed loops.

    Returns ``(kind, points)`` pairs where ``kind`` is ``"containment"`` for
    the loop bounding containment positions of the circle centre and
    ``"four_points"`` for loops bounding four-intersection positions.  In
    regimes 1 and 5 the curve is one simple containment loop; in regime 3 it
    is one cusped loop of four-intersection positions; in regimes 2 and 4 a
    middle containment loop is flanked by two four-intersection loops joined
    at the double points.

    ``samples`` fixes the angular resolution of one full turn; arcs receive a
    proportional share.
    """
    if samples < 16:
        raise DomainError(f"need at least 16 samples per turn, got {samples!r}")
    case = case_classify(e, r)
    if case in (1, 5):
        return [("containment", sample_offset_curve(e, r, -1, samples))]
    if case == 3:
        return [("four_points", sample_offset_curve(e, r, -1, samples))]

    def arc(phi0: float, phi1: float) -> np.ndarray:
        n = max(24, int(round(samples * (phi1 - phi0) / _TWO_PI)))
        return sample_offset_arc(e, r, -1, phi0, phi1, n)

    pi = math.pi
    if case == 2:
        ang = double_point_angle_xaxis(e, r)
        middle = np.vstack((arc(ang, pi - ang), arc(pi + ang, _TWO_PI - ang)[1:]))
        first = arc(-ang, ang)
        second = arc(pi - ang, pi + ang)
    else:
        ang = double_point_angle_yaxis(e, r)
        middle = np.vstack((arc(pi - ang, pi + ang), arc(_TWO_PI - ang, _TWO_PI + ang)[1:]))
        first = arc(ang, pi - ang)
        second = arc(pi + ang, _TWO_PI - ang)
    return [
        ("containment", middle),
        ("four_points", first),
        ("four_points", second),
    ]
