"""Command-line front end.

Every command prints one JSON report: the command name, the tool version,
an echo of the inputs and the results.  Exit codes: 0 success, 2 input
error, 3 mathematical refusal, 4 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import sympy

from . import __version__
from .arcorder import minimal_elements
from .arcs import TorusArc, closed_point_in_singular_locus, lift_orbit, monomial_arc, orbit_of_arc, parse_laurent, valuation_of_arc
from .cones import Cone, Face, is_regular, make_cone, singular_faces
from .germ import (
    LineSpec,
    blowup_chart_strict_transform,
    curve_on_hypersurface,
    dfm_surjective,
    extend_curve_to_surface,
    jet_equations,
    jet_variables,
    line_on_cone,
    linear_part,
    multiplicity,
    residual_report,
    restrict_t_zero,
    tangent_cone,
)
from .resolution import (
    Fan,
    NotAvoidableError,
    SubdivisionLog,
    avoid_ray,
    hj_minimal_resolution_2d,
    is_divisorial,
    is_regular_fan,
    is_subdivision,
    preserves_regular_faces,
    resolve,
)
from .series import format_series, parse_series

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_INTERNAL = 0, 2, 3, 4
REFUSAL_MESSAGE = "essential divisor cannot be avoided (Theorem: Nash map bijective)"


class InputError(Exception):
    pass


class Refusal(Exception):
    pass


# ------------------------------------------------------------------ parsing


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def _int_vector(raw, n: int, where: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
        raise InputError(f"{where}: expected a list of integers, got {json.dumps(raw)}")
    if len(raw) != n:
        raise InputError(f"{where}: expected {n} entries, got {len(raw)}")
    return tuple(raw)


def load_cone(path: str) -> tuple[Cone, dict]:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "lattice_rank" not in doc or "rays" not in doc:
        raise InputError(f"{path}: a cone document needs 'lattice_rank' and 'rays'")
    n = doc["lattice_rank"]
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{path}: lattice_rank must be a positive integer")
    if not isinstance(doc["rays"], list) or not doc["rays"]:
        raise InputError(f"{path}: rays must be a non-empty list")
    rays = [_int_vector(r, n, f"{path}: rays[{i}]") for i, r in enumerate(doc["rays"])]
    try:
        cone = make_cone(rays)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    return cone, {"lattice_rank": n, "rays": [list(r) for r in rays]}


def load_fan(path: str, ambient: Cone) -> Fan:
    doc = _load_json(path)
    if isinstance(doc, dict) and "results" in doc and isinstance(doc["results"], dict):
        doc = doc["results"].get("fan", doc)
    if not isinstance(doc, dict) or "maximal_cones" not in doc:
        raise InputError(f"{path}: a fan document needs 'maximal_cones'")
    n = ambient.rank
    cones = []
    for i, k in enumerate(doc["maximal_cones"]):
        if not isinstance(k, list):
            raise InputError(f"{path}: maximal_cones[{i}] must be a list of rays")
        try:
            cones.append(make_cone([_int_vector(r, n, f"{path}: maximal_cones[{i}]") for r in k]))
        except ValueError as exc:
            raise InputError(f"{path}: maximal_cones[{i}]: {exc}") from None
    fan = Fan(ambient, tuple(cones))
    if not is_subdivision(fan, ambient):
        raise InputError(f"{path}: fan does not subdivide the cone")
    return fan


def parse_ray(text: str, n: int) -> tuple[int, ...]:
    try:
        v = tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise InputError(f"cannot parse ray {text!r}: expected comma-separated integers") from None
    if len(v) != n:
        raise InputError(f"ray {text!r} has {len(v)} entries, lattice rank is {n}")
    return v


def _equation(text: str, field: int | None):
    try:
        return parse_series(text, field=field)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ------------------------------------------------------------------ reports


def _vec(v) -> list[int]:
    return [int(x) for x in v]


def _face(f: Face | Cone) -> dict:
    return {"rays": [_vec(r) for r in f.rays], "dim": f.dim}


def _fan(f: Fan) -> dict:
    return {
        "rays": [_vec(r) for r in f.rays],
        "maximal_cones": [[_vec(r) for r in k.rays] for k in f.maximal_cones],
    }


def _log(log: SubdivisionLog) -> list[dict]:
    return [{"center": _vec(c), "phase": p} for c, p in log.steps]


def _certificates(f: Fan, c: Cone) -> dict:
    sub = is_subdivision(f, c)
    return {
        "subdivision": sub,
        "regular": is_regular_fan(f),
        "preserves_regular_faces": preserves_regular_faces(f, c),
        "divisorial": is_divisorial(f, c) if sub else False,
    }


def _series_list(items) -> list[str]:
    return [format_series(x) for x in items]


def report(command: str, inputs: dict, results: dict) -> dict:
    return {"command": command, "tool_version": __version__, "inputs": inputs, "results": results}


# ------------------------------------------------------------------ commands


def cmd_analyze(args) -> dict:
    cone, echo = load_cone(args.cone_file)
    rep = minimal_elements(cone)
    results = {
        "facet_normals": [_vec(u) for u in cone.normals],
        "singular_faces": [_face(f) for f in singular_faces(cone)],
        "s_summary": {
            "candidates_examined": rep.candidate_count,
            "candidates_in_S": rep.s_candidate_count,
        },
        "minimal_elements": [_vec(v) for v in rep.minimal_elements],
        "essential_divisor_count": rep.count,
    }
    if is_regular(cone):
        results["note"] = "smooth: no essential divisors"
    return report("analyze", {"cone": echo}, results)


def cmd_resolve(args) -> dict:
    cone, echo = load_cone(args.cone_file)
    inputs = {"cone": echo, "avoid": args.avoid, "2d_minimal": args.two_d_minimal}
    results: dict = {}
    if args.two_d_minimal:
        if args.avoid:
            raise InputError("--avoid and --2d-minimal are mutually exclusive")
        try:
            fan, new = hj_minimal_resolution_2d(cone)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        log = SubdivisionLog([(v, "two-dim-minimal") for v in new])
        results["new_rays"] = [_vec(v) for v in new]
    elif args.avoid:
        v = parse_ray(args.avoid, cone.rank)
        try:
            fan, log = avoid_ray(cone, v)
        except NotAvoidableError:
            raise Refusal(REFUSAL_MESSAGE) from None
        except ValueError as exc:
            raise Refusal(str(exc)) from None
        results["avoided_ray"] = _vec(v)
        results["ray_absent"] = v not in fan.rays
        results["kept_cone"] = [_vec(r) for r in log.kept_cone]
    else:
        fan, log = resolve(cone)
    results["fan"] = _fan(fan)
    results["log"] = _log(log)
    results["certificates"] = _certificates(fan, cone)
    return report("resolve", inputs, results)


def _arc_from_args(args, n: int) -> TorusArc:
    if args.monomial is not None:
        v = parse_ray(args.monomial, n)
        return monomial_arc(v, args.truncation)
    comps = [c.strip() for c in args.series.split(";")]
    if len(comps) != n:
        raise InputError(f"--series has {len(comps)} components, lattice rank is {n}")
    try:
        parsed = [parse_laurent(c) for c in comps]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    trunc = args.truncation
    if trunc is None:
        trunc = max((k for p in parsed for k in p), default=0) + 1
    return TorusArc(tuple(parsed), trunc)


def cmd_arc(args) -> dict:
    cone, echo = load_cone(args.cone_file)
    arc = _arc_from_args(args, cone.rank)
    inputs = {
        "cone": echo,
        "series": args.series,
        "monomial": args.monomial,
        "truncation": arc.truncation_order,
        "fan": args.fan,
    }
    fan = load_fan(args.fan, cone) if args.fan else None
    try:
        v = valuation_of_arc(arc)
        face = orbit_of_arc(cone, arc)
    except ValueError as exc:
        raise Refusal(str(exc)) from None
    results = {
        "valuation": _vec(v),
        "orbit_face": _face(face),
        "closed_point_in_singular_locus": closed_point_in_singular_locus(cone, arc),
    }
    if fan is not None:
        lifted = lift_orbit(fan, arc)
        results["lifted_orbit"] = _face(lifted)
        through = [r for r in lifted.rays if r not in cone.rays]
        results["exceptional_divisors_through_point"] = [_vec(r) for r in through]
        results["generic_on_exceptional_divisor"] = lifted.dim == 1 and len(through) == 1
    return report("arc", inputs, results)


def cmd_germ(args) -> dict:
    f = _equation(args.equation, args.field)
    n = len(f.variables)
    try:
        line = LineSpec.from_text(args.line, args.field)
    except ValueError as exc:
        raise InputError(f"--line: {exc}") from None
    if line.rank != n:
        raise InputError(f"--line has {line.rank} entries, equation has {n} variables")
    tail = None
    if args.curve_tail:
        parts = [p.strip() or "0" for p in args.curve_tail.split(";")]
        if len(parts) != n:
            raise InputError(f"--curve-tail has {len(parts)} components, equation has {n} variables")
        try:
            tail = [parse_series(p, ("s",), args.field) for p in parts]
        except ValueError as exc:
            raise InputError(f"--curve-tail: {exc}") from None
    inputs = {
        "equation": args.equation,
        "variables": list(f.variables),
        "line": args.line,
        "order": args.order,
        "curve_tail": args.curve_tail,
        "field": "QQ" if args.field is None else f"GF({args.field})",
    }
    if f.is_zero():
        raise InputError("equation is identically zero")
    fm = tangent_cone(f)
    if not line_on_cone(fm, line):
        raise Refusal("hypothesis failed: line_on_cone (the line is not on the tangent cone)")
    if not dfm_surjective(fm, line):
        raise Refusal("hypothesis failed: dfm_surjective (dF_m is not surjective along the line)")
    try:
        phi = curve_on_hypersurface(f, line.point, args.order, tail=tail)
    except ValueError as exc:
        raise Refusal(f"hypothesis failed: curve_on_hypersurface ({exc})") from None
    surface = extend_curve_to_surface(f, phi, line, args.order)
    m = multiplicity(f)
    residual = residual_report(f, surface)
    restricted = restrict_t_zero(surface)
    results = {
        "multiplicity": m,
        "tangent_cone": format_series(fm),
        "checks": {
            "line_on_cone": True,
            "dfm_surjective": True,
            "residual_order": residual["order"],
            "residual_kind": residual["kind"],
            "residual_bound_met": residual["order"] is None or residual["order"] >= m + args.order,
            "restriction_matches_curve": all(
                a.truncate(args.order).terms == b.truncate(args.order).terms for a, b in zip(restricted, phi)
            ),
            "tangent_plane_matches_line": linear_part(surface) == line,
        },
        "curve": _series_list(phi),
        "surface": _series_list(surface),
    }
    return report("germ", inputs, results)


def cmd_jets(args) -> dict:
    f = _equation(args.equation, args.field)
    if args.order < 0:
        raise InputError("--order must be non-negative")
    eqs = jet_equations(f, args.order)
    inputs = {"equation": args.equation, "order": args.order}
    results = {
        "variables": list(jet_variables(f.variables, args.order)),
        "equations": _series_list(eqs),
    }
    return report("jets", inputs, results)


def cmd_blowup(args) -> dict:
    f = _equation(args.equation, args.field)
    chart = int(args.chart) if args.chart.isdigit() else args.chart
    try:
        g = blowup_chart_strict_transform(f, chart)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    inputs = {"equation": args.equation, "variables": list(f.variables), "chart": args.chart}
    return report("blowup", inputs, {"strict_transform": format_series(g)})


# ------------------------------------------------------------------ driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricnash", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", metavar="FILE", help="write the report to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="singular faces and minimal elements of S")
    p.add_argument("cone_file")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("resolve", parents=[common], help="divisorial toric resolution")
    p.add_argument("cone_file")
    p.add_argument("--avoid", metavar="RAY", help="comma-separated ray to keep out of the fan")
    p.add_argument("--2d-minimal", dest="two_d_minimal", action="store_true", help="minimal resolution of a 2-D cone")
    p.set_defaults(run=cmd_resolve)

    p = sub.add_parser("arc", parents=[common], help="valuation vector and orbit of a torus arc")
    p.add_argument("cone_file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--series", help="components as Laurent polynomials in t separated by ';'")
    g.add_argument("--monomial", metavar="V", help="comma-separated valuation vector")
    p.add_argument("--truncation", type=int, help="coefficients known for t^k with k below this")
    p.add_argument("--fan", metavar="FILE", help="fan document (or resolve report) to lift the arc to")
    p.set_defaults(run=cmd_arc)

    p = sub.add_parser("germ", parents=[common], help="extend a curve to a formal surface germ")
    p.add_argument("--equation", required=True)
    p.add_argument("--line", required=True, help="linear forms in s,t separated by ','")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--curve-tail", help="higher-order curve terms in s separated by ';'")
    p.add_argument("--field", type=int, help="prime characteristic (default: rationals)")
    p.set_defaults(run=cmd_germ)

    p = sub.add_parser("jets", parents=[common], help="equations of the jet scheme")
    p.add_argument("--equation", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--field", type=int)
    p.set_defaults(run=cmd_jets)

    p = sub.add_parser("blowup", parents=[common], help="strict transform in a chart of the blowup at 0")
    p.add_argument("--equation", required=True)
    p.add_argument("--chart", required=True, help="1-based variable index or variable name")
    p.add_argument("--field", type=int)
    p.set_defaults(run=cmd_blowup)
    return parser


def _fail(code: int, message: str) -> int:
    print(f"toricnash: error: {message}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "field", None) in (2, 3):
        return _fail(EXIT_INPUT, "characteristic 2 and 3 are not supported")
    if getattr(args, "field", None) is not None and not sympy.isprime(args.field):
        return _fail(EXIT_INPUT, f"--field {args.field} is not a prime")
    try:
        doc = args.run(args)
    except InputError as exc:
        return _fail(EXIT_INPUT, str(exc))
    except Refusal as exc:
        return _fail(EXIT_REFUSED, str(exc))
    except AssertionError as exc:
        return _fail(EXIT_INTERNAL, f"internal check failed: {exc}")
    text = json.dumps(doc, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK
