"""Report assembly and deterministic JSON serialisation.

Reports are plain nested dicts with a stable key order.  Floats are written
with 17 significant digits so that equal runs produce byte-identical output
and any drift shows up in diffs; non-finite numbers are rejected outright.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Any

import numpy as np

from . import __version__
from .elliptic import complete_elliptic_e
from .errors import InternalConsistencyError
from .geometry import Ellipse, case_classify, cusp_angle
from .measures import (
    AreaSet,
    Lattice,
    MeasureSet,
    ProbabilitySet,
    SegmentProbabilitySet,
    SegmentSpec,
    areas,
    expected_intersections,
    measures,
    outer_offset_area,
    signed_inner_area_quadrature,
)
from .montecarlo import EstimateReport

__all__ = [
    "base_report",
    "area_block",
    "measure_block",
    "probability_block",
    "segment_report",
    "estimate_block",
    "residual_block",
    "error_report",
    "to_json",
    "load_schema",
]

SCHEMA_FILENAME = "report.schema.json"


def load_schema() -> dict:
    """Return the JSON schema that every emitted report satisfies."""
    text = resources.files(__package__).joinpath(SCHEMA_FILENAME).read_text()
    return json.loads(text)


def base_report(e: Ellipse, r: float, lat: Lattice | None = None) -> dict:
    inputs: dict[str, Any] = {"a": e.a, "b": e.b, "r": r}
    if lat is not None:
        inputs["lattice"] = {"s": lat.s, "t": lat.t, "sigma": lat.sigma}
    return {"version": __version__, "inputs": inputs}


def area_block(aset: AreaSet) -> dict:
    return {
        "circle_in_ellipse": aset.circle_in_ellipse,
        "ellipse_in_circle": aset.ellipse_in_circle,
        "two_points": aset.two_points,
        "four_points": aset.four_points,
        "outer": aset.outer,
        "signed_inner": aset.signed_inner,
    }


def measure_block(mset: MeasureSet) -> dict:
    return {
        "containment": mset.containment,
        "containment_flavor": mset.flavor,
        "two_points": mset.two_points,
        "four_points": mset.four_points,
    }


def probability_block(pset: ProbabilitySet, mean_crossings: float) -> dict:
    return {
        "zero": pset.p_zero,
        "two_points": pset.p_two,
        "four_points": pset.p_four,
        "contained": pset.p_contained,
        "disjoint": pset.p_disjoint,
        "expected_intersections": mean_crossings,
    }


def residual_block(e: Ellipse, r: float, aset: AreaSet) -> dict:
    """Internal-consistency residuals.

    ``partition``: the four class areas against the outer offset area.
    ``crossing_identity``: ``2 A_2 + 4 A_4`` against ``16 r a E(eps)``.
    ``signed_inner_quadrature``: closed form against direct quadrature.
    """
    partition = (
        aset.circle_in_ellipse
        + aset.ellipse_in_circle
        + aset.two_points
        + aset.four_points
        - aset.outer
    )
    crossing = (
        2.0 * aset.two_points
        + 4.0 * aset.four_points
        - 16.0 * r * e.a * complete_elliptic_e(e.eccentricity)
    )
    quad = signed_inner_area_quadrature(e, r) - aset.signed_inner
    return {
        "partition": partition,
        "crossing_identity": crossing,
        "signed_inner_quadrature": quad,
    }


def measures_report(e: Ellipse, r: float) -> dict:
    report = base_report(e, r)
    aset = areas(e, r)
    report["case"] = aset.case
    report["cusp_angle"] = cusp_angle(e, r)
    report["areas"] = area_block(aset)
    report["measures"] = measure_block(measures(e, r))
    report["residuals"] = residual_block(e, r, aset)
    return report


def probabilities_report(e: Ellipse, r: float, lat: Lattice, pset: ProbabilitySet) -> dict:
    report = base_report(e, r, lat)
    report["case"] = case_classify(e, r)
    report["probabilities"] = probability_block(pset, expected_intersections(e, r, lat))
    return report


def segment_report(
    seg: SegmentSpec,
    m_contained: float,
    m_one: float,
    m_two: float,
    lat: Lattice | None = None,
    pset: SegmentProbabilitySet | None = None,
) -> dict:
    inputs: dict[str, Any] = {"l": seg.l, "r": seg.r}
    if lat is not None:
        inputs["lattice"] = {"s": lat.s, "t": lat.t, "sigma": lat.sigma}
    report: dict[str, Any] = {"version": __version__, "inputs": inputs}
    report["segment_measures"] = {
        "containment": m_contained,
        "one_point": m_one,
        "two_points": m_two,
    }
    if pset is not None:
        report["segment_probabilities"] = {
            "zero": pset.p_zero,
            "one_point": pset.p_one,
            "two_points": pset.p_two,
            "contained": pset.p_contained,
            "disjoint": pset.p_disjoint,
        }
    return report


def estimate_block(est: EstimateReport) -> dict:
    block: dict[str, Any] = {
        "kind": est.kind,
        "n": est.n,
        "seed": est.seed,
        "counts": dict(est.counts),
        "estimates": dict(est.estimates),
        "stderr": dict(est.stderr),
        "reference": dict(est.reference),
        "z_scores": dict(est.z_scores),
        "max_abs_z": est.max_abs_z,
    }
    if est.mean_intersections is not None:
        block["mean_intersections"] = {
            "estimate": est.mean_intersections,
            "stderr": est.mean_intersections_stderr,
            "reference": est.mean_intersections_reference,
            "z": est.mean_intersections_z,
        }
    return block


def error_report(kind: str, message: str) -> dict:
    return {"version": __version__, "error": {"type": kind, "message": message}}


# -- serialisation ------------------------------------------------------------


def _format_scalar(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            raise InternalConsistencyError("non-finite number in report")
        return format(value, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialise {type(value).__name__} in a report")


def _write(value: Any, out: list[str], indent: int | None, level: int) -> None:
    if isinstance(value, dict):
        items = list(value.items())
        if not items:
            out.append("{}")
            return
        out.append("{")
        for i, (key, item) in enumerate(items):
            if indent is not None:
                out.append("\n" + " " * indent * (level + 1))
            out.append(json.dumps(str(key)) + (": " if indent is not None else ":"))
            _write(item, out, indent, level + 1)
            if i < len(items) - 1:
                out.append(",")
        if indent is not None:
            out.append("\n" + " " * indent * level)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[")
        for i, item in enumerate(value):
            if indent is not None:
                out.append("\n" + " " * indent * (level + 1))
            _write(item, out, indent, level + 1)
            if i < len(value) - 1:
                out.append(",")
        if indent is not None:
            out.append("\n" + " " * indent * level)
        out.append("]")
    else:
        out.append(_format_scalar(value))


def to_json(report: dict, indent: int | None = 2) -> str:
    """Serialise a report deterministically.

    Keys keep their insertion order, floats get 17 significant digits, and
    non-finite numbers raise :class:`InternalConsistencyError`.
    """
    out: list[str] = []
    _write(report, out, indent, 0)
    return "".join(out)
