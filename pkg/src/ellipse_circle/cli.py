"""Command line interface.

Every subcommand prints one JSON report to stdout.  Exit codes: 0 success,
2 invalid input, 3 assumption violation, 4 statistical failure (an estimate
more than four standard errors from its closed form), 5 internal-consistency
failure (two routes that must agree did not).
"""

from __future__ import annotations

import argparse
import math
import sys

from .errors import (
    AssumptionError,
    DegeneratePoseError,
    DomainError,
    CaseError,
    InternalConsistencyError,
    QuadratureError,
    ResolutionError,
)
from .geometry import Ellipse, case_classify, cusp_angle
from .measures import (
    Lattice,
    SegmentSpec,
    probabilities,
    segment_containment_measure,
    segment_measures,
    segment_probabilities,
)
from .montecarlo import estimate_fixed_direction_areas, simulate_throws
from .oracle import Relation, classify, region_cross_check
from . import report as rep
from .svg import build_curve_scene, render_svg

__all__ = ["main"]

#: z threshold beyond which a simulation run is reported as a statistical
#: failure via the exit code.
Z_FAILURE = 4.0

_RELATION_NAMES = {
    Relation.DISJOINT_OUTSIDE: "disjoint_outside",
    Relation.ELLIPSE_INSIDE_CIRCLE: "ellipse_inside_circle",
    Relation.CIRCLE_INSIDE_ELLIPSE: "circle_inside_ellipse",
    Relation.TWO_POINTS: "two_points",
    Relation.FOUR_POINTS: "four_points",
    Relation.DEGENERATE: "degenerate",
}


def _add_ellipse_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", type=float, required=True, help="semi-major axis")
    parser.add_argument("--b", type=float, required=True, help="semi-minor axis")
    parser.add_argument("--r", type=float, required=True, help="circle radius")


def _add_lattice_args(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--s", type=float, required=required, help="first lattice span")
    parser.add_argument("--t", type=float, required=required, help="second lattice span")
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--sigma",
        type=float,
        default=None,
        help="lattice angle in radians (default pi/2)",
    )
    group.add_argument(
        "--sigma-deg",
        type=float,
        default=None,
        help="lattice angle in degrees",
    )


def _lattice_from(args: argparse.Namespace) -> Lattice:
    if args.sigma_deg is not None:
        sigma = math.radians(args.sigma_deg)
    elif args.sigma is not None:
        sigma = args.sigma
    else:
        sigma = math.pi / 2.0
    return Lattice(s=args.s, t=args.t, sigma=sigma)


def _emit(report: dict, indent: int = 2) -> None:
    sys.stdout.write(rep.to_json(report, indent=indent) + "\n")


def _cmd_measures(args: argparse.Namespace) -> int:
    e = Ellipse(args.a, args.b)
    _emit(rep.measures_report(e, args.r), args.json_indent)
    return 0


def _cmd_probabilities(args: argparse.Namespace) -> int:
    e = Ellipse(args.a, args.b)
    lat = _lattice_from(args)
    pset = probabilities(e, args.r, lat)
    _emit(rep.probabilities_report(e, args.r, lat, pset), args.json_indent)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    e = Ellipse(args.a, args.b)
    if args.mode == "areas":
        samples = args.samples if args.samples is not None else 1_000_000
        est = estimate_fixed_direction_areas(e, args.r, samples, args.seed)
        report = rep.base_report(e, args.r)
    else:
        if args.s is None or args.t is None:
            raise DomainError("throw simulation needs --s and --t")
        lat = _lattice_from(args)
        samples = args.samples if args.samples is not None else 10_000_000
        est = simulate_throws(e, args.r, lat, samples, args.seed)
        report = rep.base_report(e, args.r, lat)
    report["case"] = case_classify(e, args.r)
    report["estimate"] = rep.estimate_block(est)
    _emit(report, args.json_indent)
    return 4 if est.max_abs_z > Z_FAILURE else 0


def _cmd_segment(args: argparse.Namespace) -> int:
    seg = SegmentSpec(args.l, args.r)
    m_one, m_two = segment_measures(seg)
    lat = pset = None
    if args.s is not None or args.t is not None:
        if args.s is None or args.t is None:
            raise DomainError("segment probabilities need both --s and --t")
        lat = _lattice_from(args)
        pset = segment_probabilities(seg, lat)
    _emit(
        rep.segment_report(
            seg, segment_containment_measure(seg), m_one, m_two, lat, pset
        ),
        args.json_indent,
    )
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    e = Ellipse(args.a, args.b)
    pose = (args.x0, args.y0)
    oracle_relation = classify(e, args.r, pose)
    region_relation = region_cross_check(e, args.r, pose)
    agree: bool | None
    if oracle_relation is Relation.DEGENERATE:
        agree = None  # tangent poses sit on a region boundary
    else:
        agree = oracle_relation == region_relation
    report = rep.base_report(e, args.r)
    report["case"] = case_classify(e, args.r)
    report["pose"] = {"x0": args.x0, "y0": args.y0}
    report["classification"] = {
        "oracle": _RELATION_NAMES[oracle_relation],
        "region": _RELATION_NAMES[Relation(int(region_relation))],
        "agree": agree,
    }
    _emit(report, args.json_indent)
    return 5 if agree is False else 0


def _cmd_curves(args: argparse.Namespace) -> int:
    e = Ellipse(args.a, args.b)
    scene = build_curve_scene(e, args.r, args.samples)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(render_svg(scene))
    report = rep.base_report(e, args.r)
    report["case"] = case_classify(e, args.r)
    report["cusp_angle"] = cusp_angle(e, args.r)
    report["curves"] = {
        "out": args.out,
        "samples": args.samples,
        "polylines": len(scene.polylines),
        "markers": len(scene.markers),
    }
    _emit(report, args.json_indent)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellipse-circle",
        description="Kinematic measures and hitting probabilities for an "
        "ellipse meeting a circle or a lattice of circles.",
    )
    parser.add_argument(
        "--json-indent",
        type=int,
        default=2,
        help="indentation width for JSON output (default 2)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="closed-form areas and measures")
    _add_ellipse_args(p)
    p.set_defaults(func=_cmd_measures)

    p = sub.add_parser("probabilities", help="lattice hitting probabilities")
    _add_ellipse_args(p)
    _add_lattice_args(p, required=True)
    p.set_defaults(func=_cmd_probabilities)

    p = sub.add_parser("simulate", help="Monte Carlo validation run")
    _add_ellipse_args(p)
    _add_lattice_args(p, required=False)
    p.add_argument("--mode", choices=("areas", "throws"), required=True)
    p.add_argument(
        "--samples",
        type=int,
        default=None,
        help="sample count (default: 1e6 for areas, 1e7 for throws)",
    )
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("segment", help="line-segment limit measures")
    p.add_argument("--l", type=float, required=True, help="segment length")
    p.add_argument("--r", type=float, required=True, help="circle radius")
    _add_lattice_args(p, required=False)
    p.set_defaults(func=_cmd_segment)

    p = sub.add_parser("classify", help="classify one circle pose both ways")
    _add_ellipse_args(p)
    p.add_argument("--x0", type=float, required=True, help="circle centre x")
    p.add_argument("--y0", type=float, required=True, help="circle centre y")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("curves", help="render the curve gallery as SVG")
    _add_ellipse_args(p)
    p.add_argument("--out", required=True, help="output SVG path")
    p.add_argument("--samples", type=int, default=1024, help="points per curve")
    p.set_defaults(func=_cmd_curves)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    indent = getattr(args, "json_indent", 2)
    try:
        return args.func(args)
    except AssumptionError as exc:
        _emit(rep.error_report("assumption", str(exc)), indent)
        return 3
    except (InternalConsistencyError, QuadratureError, ResolutionError) as exc:
        _emit(rep.error_report("internal_consistency", str(exc)), indent)
        return 5
    except DegeneratePoseError as exc:
        _emit(rep.error_report("degenerate_pose", str(exc)), indent)
        return 5
    except (DomainError, CaseError, ValueError, OSError) as exc:
        _emit(rep.error_report("input", str(exc)), indent)
        return 2


if __name__ == "__main__":
    sys.exit(main())
