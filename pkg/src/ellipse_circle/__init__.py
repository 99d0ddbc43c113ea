"""Kinematic measures and hitting probabilities for an ellipse and a circle.

The package answers, in closed form and by brute force, how a randomly
placed ellipse with semi-axes ``a >= b`` intersects a circle of radius ``r``:
the areas of the centre regions realising each intersection pattern for a
fixed direction, the kinematic measures over all poses, and the hitting
probabilities against a lattice of circles, together with the line-segment
limit of the ellipse.
"""

__version__ = "0.1.0"

from .elliptic import complete_elliptic_e, incomplete_elliptic_e
from .errors import (
    AssumptionError,
    CaseError,
    DegeneratePoseError,
    DomainError,
    EllipseCircleError,
    InternalConsistencyError,
    QuadratureError,
    ResolutionError,
)
from .geometry import (
    Ellipse,
    case_classify,
    curvature_radius_bounds,
    cusp_angle,
    double_point_angle_xaxis,
    double_point_angle_yaxis,
    ellipse_point,
    evolute_point,
    inner_offset_loops,
    offset_point,
    sample_ellipse,
    sample_evolute,
    sample_offset_arc,
    sample_offset_curve,
    support,
    support_d1,
    support_d2,
)
from .measures import (
    AreaSet,
    Lattice,
    MeasureSet,
    ProbabilitySet,
    SegmentProbabilitySet,
    SegmentSpec,
    areas,
    expected_intersections,
    loop_area_antiderivative,
    measures,
    outer_offset_area,
    probabilities,
    segment_containment_measure,
    segment_measures,
    segment_probabilities,
    signed_inner_area,
    signed_inner_area_quadrature,
)
from .montecarlo import (
    EstimateReport,
    estimate_fixed_direction_areas,
    rng_stream,
    simulate_throws,
)
from .oracle import (
    OffsetRegions,
    Relation,
    classify,
    classify_batch,
    count_intersections,
    offset_curve_distance,
    region_cross_check,
)

__all__ = [
    "__version__",
    "AreaSet",
    "AssumptionError",
    "CaseError",
    "DegeneratePoseError",
    "DomainError",
    "Ellipse",
    "EllipseCircleError",
    "EstimateReport",
    "InternalConsistencyError",
    "Lattice",
    "MeasureSet",
    "OffsetRegions",
    "ProbabilitySet",
    "QuadratureError",
    "Relation",
    "ResolutionError",
    "SegmentProbabilitySet",
    "SegmentSpec",
    "areas",
    "case_classify",
    "classify",
    "classify_batch",
    "complete_elliptic_e",
    "count_intersections",
    "curvature_radius_bounds",
    "cusp_angle",
    "double_point_angle_xaxis",
    "double_point_angle_yaxis",
    "ellipse_point",
    "estimate_fixed_direction_areas",
    "evolute_point",
    "expected_intersections",
    "incomplete_elliptic_e",
    "inner_offset_loops",
    "loop_area_antiderivative",
    "measures",
    "offset_curve_distance",
    "offset_point",
    "outer_offset_area",
    "probabilities",
    "region_cross_check",
    "rng_stream",
    "sample_ellipse",
    "sample_evolute",
    "sample_offset_arc",
    "sample_offset_curve",
    "segment_containment_measure",
    "segment_measures",
    "segment_probabilities",
    "signed_inner_area",
    "signed_inner_area_quadrature",
    "simulate_throws",
    "support",
    "support_d1",
    "support_d2",
]
