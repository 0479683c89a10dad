"""Command-line interface: every operation behind one executable, JSON out.

Exit codes: 0 found/success, 2 no point / no partner in the box,
3 precondition violation or parse error (diagnostic on stderr),
1 internal error.
"""

import argparse
import json
import sys
from math import comb

from . import bounds, curvepoint, p1lab
from .avoid import (
    AFFINE,
    DEFAULT_ORACLE_LIMIT,
    GRASSMANNIAN,
    PROJECTIVE,
    GrassmannianPoint,
    Hypersurface,
    ProjectivePoint,
    ambient_point_count,
    avoid as run_avoid,
    exhaustive_oracle,
    plucker_variable_names,
)
from .errors import FFGeomError, InternalContradiction, ParseError
from .fields import parse_field_spec
from .polynomials import count_variables, parse_polynomial

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_NO_POINT = 2
EXIT_PRECONDITION = 3


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def _field_json(fld):
    return {
        "characteristic": fld.p,
        "degree": fld.k,
        "cardinality": fld.q,
        "modulus": list(fld.modulus) if fld.modulus else None,
    }


def _elt(fld, a):
    return fld.coords(a)


def _point_json(point, fld):
    if isinstance(point, ProjectivePoint):
        return {
            "kind": "projective",
            "coordinates": [_elt(fld, c) for c in point.coords],
        }
    if isinstance(point, GrassmannianPoint):
        return {
            "kind": "grassmannian",
            "matrix": [[_elt(fld, c) for c in row] for row in point.matrix],
            "plucker": [_elt(fld, c) for c in point.plucker],
        }
    return {"kind": "affine", "coordinates": [_elt(fld, c) for c in point]}


def _trace_json(trace, fld):
    out = []
    for step in trace or []:
        kind, value = step
        label = f"x{kind}" if isinstance(kind, int) else str(kind)
        if isinstance(value, int):
            out.append({"step": label, "value": _elt(fld, value)})
        elif isinstance(value, tuple):
            out.append({"step": label, "value": [_elt(fld, v) for v in value]})
        else:
            out.append({"step": label, "value": str(value)})
    return out


def _emit(doc, stream):
    json.dump(doc, stream, indent=2)
    stream.write("\n")


def _build_parser():
    top = _Parser(prog="ffgeom", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="field inspection")
    fs = p.add_subparsers(dest="action", required=True)
    pi = fs.add_parser("info")
    pi.add_argument("--field", required=True)

    p = sub.add_parser("avoid", help="point off a hypersurface")
    av = p.add_subparsers(dest="ambient", required=True)
    pa = av.add_parser("affine")
    pa.add_argument("--field", required=True)
    pa.add_argument("--poly", required=True)
    pa.add_argument("--vars", type=int, default=None)
    pp = av.add_parser("projective")
    pp.add_argument("--field", required=True)
    pp.add_argument("--poly", required=True)
    pp.add_argument("--dim", type=int, default=None)
    pg = av.add_parser("grass")
    pg.add_argument("--field", required=True)
    pg.add_argument("--poly", required=True)
    pg.add_argument("--m", type=int, required=True)
    pg.add_argument("--n", type=int, required=True)

    p = sub.add_parser("oracle", help="exhaustive listing of avoiding points")
    p.add_argument("--kind", choices=[AFFINE, PROJECTIVE, "grass"], required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--vars", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--limit", type=int, default=DEFAULT_ORACLE_LIMIT)
    p.add_argument("--max-listed", type=int, default=1000)

    p = sub.add_parser("curve", help="plane-curve point search")
    cs = p.add_subparsers(dest="action", required=True)
    cp = cs.add_parser("point")
    cp.add_argument("--curve", required=True)
    cp.add_argument("--avoid", required=True)
    cp.add_argument("--field", required=True)
    cp.add_argument("--verify", action="store_true")

    p = sub.add_parser("bound", help="rank and extension-degree bounds")
    bs = p.add_subparsers(dest="action", required=True)
    bm = bs.add_parser("m")
    bm.add_argument("--n", type=int, required=True)
    bm.add_argument("--alpha", type=int, required=True)
    bm.add_argument("--beta", type=int, required=True)
    bm.add_argument("--mode", choices=[bounds.GENERAL, bounds.INFINITE, bounds.CHAR_P],
                    default=bounds.GENERAL)
    bm.add_argument("--p", type=int, default=None)
    bp = bs.add_parser("pipeline")
    bp.add_argument("--g", type=int, required=True)
    bp.add_argument("--r", type=int, required=True)
    bp.add_argument("--d", type=int, required=True)
    bp.add_argument("--alpha", type=int, required=True)
    bp.add_argument("--beta", type=int, required=True)
    bp.add_argument("--mode", choices=[bounds.GENERAL, bounds.INFINITE, bounds.CHAR_P],
                    default=bounds.GENERAL)
    bp.add_argument("--p", type=int, default=None)
    bp.add_argument("--moduli-dim", type=int, default=1)

    p = sub.add_parser("p1", help="genus-0 semistability lab")
    ps = p.add_subparsers(dest="action", required=True)
    pv = ps.add_parser("verify")
    pv.add_argument("--type", required=True)
    pv.add_argument("--search-bound", type=int, default=5)
    pv.add_argument("--rank-bound", type=int, default=3)
    pc = ps.add_parser("scan")
    pc.add_argument("--rank-max", type=int, required=True)
    pc.add_argument("--coeff-bound", type=int, required=True)
    pc.add_argument("--search-bound", type=int, default=None)
    pc.add_argument("--rank-bound", type=int, default=None)

    return top


def _hypersurface_from_args(args, kind):
    fld = parse_field_spec(args.field)
    if kind == AFFINE:
        nvars = args.vars if args.vars else max(count_variables(args.poly), 1)
        poly = parse_polynomial(args.poly, fld, nvars)
        return Hypersurface(poly, AFFINE, (nvars,)), fld
    if kind == PROJECTIVE:
        if args.dim is not None:
            nvars = args.dim + 1
        else:
            nvars = max(count_variables(args.poly), 2)
        poly = parse_polynomial(args.poly, fld, nvars)
        return Hypersurface(poly, PROJECTIVE, (nvars - 1,)), fld
    m, n = args.m, args.n
    poly = parse_polynomial(args.poly, fld, comb(n, m))
    return Hypersurface(poly, GRASSMANNIAN, (m, n)), fld


def _cmd_field_info(args, out):
    fld = parse_field_spec(args.field)
    doc = {
        "subcommand": "field info",
        "inputs_echo": {"field": args.field},
        "field": _field_json(fld),
        "generator": _elt(fld, fld.generator()),
    }
    _emit(doc, out)
    return EXIT_OK


def _cmd_avoid(args, out):
    kind = {"affine": AFFINE, "projective": PROJECTIVE, "grass": GRASSMANNIAN}[
        args.ambient
    ]
    surf, fld = _hypersurface_from_args(args, kind)
    result = run_avoid(surf, fld)
    doc = {
        "subcommand": f"avoid {args.ambient}",
        "inputs_echo": {
            "field": args.field,
            "poly": args.poly,
            "ambient": args.ambient,
            "degree": surf.degree,
        },
        "mode": result.mode,
        "outcome": result.outcome,
    }
    if kind == GRASSMANNIAN:
        doc["inputs_echo"]["m"] = args.m
        doc["inputs_echo"]["n"] = args.n
        doc["plucker_variables"] = {
            name: list(cols) for name, cols in plucker_variable_names(args.m, args.n)
        }
    if result.found:
        doc["point"] = _point_json(result.point, fld)
        doc["trace"] = _trace_json(result.trace, fld)
        if isinstance(result.point, GrassmannianPoint):
            value = surf.poly.map_coefficients(fld).eval(result.point.plucker)
        elif isinstance(result.point, ProjectivePoint):
            value = surf.poly.map_coefficients(fld).eval(result.point.coords)
        else:
            value = surf.poly.map_coefficients(fld).eval(result.point)
        doc["verified"] = {"value_at_point": _elt(fld, value), "nonzero": value != 0}
        _emit(doc, out)
        return EXIT_OK
    doc["verified"] = {"exhaustive_scan": True}
    _emit(doc, out)
    return EXIT_NO_POINT


def _cmd_oracle(args, out):
    kind = GRASSMANNIAN if args.kind == "grass" else args.kind
    surf, fld = _hypersurface_from_args(args, kind)
    points = exhaustive_oracle(surf, fld, limit=args.limit)
    doc = {
        "subcommand": "oracle",
        "inputs_echo": {"field": args.field, "poly": args.poly, "kind": args.kind},
        "ambient_points": ambient_point_count(surf, fld),
        "avoiding_count": len(points),
        "points": [_point_json(p, fld) for p in points[: args.max_listed]],
        "truncated": len(points) > args.max_listed,
    }
    _emit(doc, out)
    return EXIT_OK if points else EXIT_NO_POINT


def _cmd_curve_point(args, out):
    fld = parse_field_spec(args.field)
    fpoly = parse_polynomial(args.curve, fld, 3)
    gpoly = parse_polynomial(args.avoid, fld, 3)
    curve = curvepoint.PlaneCurve(fpoly)
    divisor = curvepoint.CurveDivisor(gpoly)
    result = curvepoint.point_off_divisor(curve, divisor, fld)
    k2 = result.k2
    doc = {
        "subcommand": "curve point",
        "inputs_echo": {
            "curve": args.curve,
            "avoid": args.avoid,
            "field": args.field,
        },
        "mode": "guaranteed",
        "k1": _field_json(result.k1),
        "k2": _field_json(k2),
        "extension_degree": result.ext_degree,
        "point": _point_json(result.point, k2),
        "projection_center": _point_json(result.center, fld),
        "fiber_parameter": _point_json(result.fiber_parameter, fld),
        "orbit": [_point_json(p, k2) for p in result.orbit],
        "verified": result.flags,
    }
    if args.verify:
        flags = curvepoint.verify_on_curve(result, curve, divisor)
        if not all(flags.values()):
            raise InternalContradiction(f"re-verification failed: {flags}")
        doc["verified"] = flags
    _emit(doc, out)
    return EXIT_OK


def _cmd_bound(args, out):
    if args.action == "m":
        inp = bounds.BoundInputs(args.n, args.alpha, args.beta, args.mode, args.p)
        doc = {
            "subcommand": "bound m",
            "inputs_echo": {
                "n": args.n,
                "alpha": args.alpha,
                "beta": args.beta,
                "mode": args.mode,
                "p": args.p,
            },
            "M": bounds.bound_M(inp),
        }
        _emit(doc, out)
        return EXIT_OK
    report = bounds.rank_pipeline(
        args.g, args.r, args.d, args.alpha, args.beta,
        field_mode=args.mode, char=args.p, moduli_dim=args.moduli_dim,
    )
    doc = {
        "subcommand": "bound pipeline",
        "inputs_echo": {
            "g": args.g,
            "r": args.r,
            "d": args.d,
            "alpha": args.alpha,
            "beta": args.beta,
            "mode": args.mode,
            "p": args.p,
            "moduli_dim": args.moduli_dim,
        },
    }
    doc.update(report.as_json_dict())
    _emit(doc, out)
    return EXIT_OK


def _parse_type(text):
    try:
        parts = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"bad splitting type {text!r}") from exc
    if not parts:
        raise ParseError("empty splitting type")
    return p1lab.SplittingType(parts)


def _cmd_p1(args, out):
    if args.action == "verify":
        e = _parse_type(args.type)
        partner = p1lab.find_partner(e, args.search_bound, args.rank_bound)
        doc = {
            "subcommand": "p1 verify",
            "inputs_echo": {
                "type": args.type,
                "search_bound": args.search_bound,
                "rank_bound": args.rank_bound,
            },
            "splitting_type": list(e.parts),
            "slope": str(p1lab.slope(e)),
            "semistable": p1lab.is_semistable(e),
            "partner": list(partner.parts) if partner else None,
        }
        if partner:
            dims = p1lab.cohomology_dims(p1lab.tensor(e, partner))
            doc["verified"] = {"h0": dims.h0, "h1": dims.h1}
        _emit(doc, out)
        return EXIT_OK if partner else EXIT_NO_POINT
    sb = args.search_bound if args.search_bound is not None else args.coeff_bound + 1
    rb = args.rank_bound if args.rank_bound is not None else args.rank_max
    report = p1lab.verify_criterion(args.rank_max, args.coeff_bound, sb, rb)
    doc = {
        "subcommand": "p1 scan",
        "inputs_echo": {
            "rank_max": args.rank_max,
            "coeff_bound": args.coeff_bound,
            "search_bound": sb,
            "rank_bound": rb,
        },
        "total_types": report.total_types,
        "semistable_count": report.semistable_count,
        "partnered_count": report.partnered_count,
        "max_partner_rank": report.max_partner_rank,
        "counterexamples": [
            [list(e.parts), list(p.parts) if p else None]
            for e, p in report.counterexamples
        ],
        "criterion_holds": report.ok,
    }
    _emit(doc, out)
    return EXIT_OK if report.ok else EXIT_INTERNAL


def run(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION
    try:
        if args.command == "field":
            return _cmd_field_info(args, out)
        if args.command == "avoid":
            return _cmd_avoid(args, out)
        if args.command == "oracle":
            return _cmd_oracle(args, out)
        if args.command == "curve":
            return _cmd_curve_point(args, out)
        if args.command == "bound":
            return _cmd_bound(args, out)
        if args.command == "p1":
            return _cmd_p1(args, out)
        raise AssertionError("unreachable")
    except InternalContradiction as exc:
        print(f"internal error: {exc}", file=err)
        return EXIT_INTERNAL
    except (FFGeomError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
