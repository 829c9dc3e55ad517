"""Command-line interface.

JSON results go to stdout, human-readable notes to stderr.  Exit codes:
0 success (and, for verify/falsify, "property holds"), 1 a check failed
or a violation was found, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys

from .field import FieldError, parse_expr
from .gadgets import GadgetError, compile_expr
from .geom import GeometryError, Point
from .io import (FormatError, dumps, framework_from_json, witness_from_json,
                 witness_to_json)
from .relations import (RelationError, distinct_witness,
                        equal_distance_witness, hyperplane_witness,
                        less_than_witness)
from .rigidity import RigidityError, falsify_search, is_rigid
from .svg import SvgError, render_svg
from .verify import verify

_INPUT_ERRORS = (FieldError, GadgetError, GeometryError, RelationError,
                 RigidityError, FormatError, SvgError, ValueError, OSError)


def _info(msg):
    print(msg, file=sys.stderr)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as f:
            f.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_point(text, dim):
    coords = [parse_expr(t) for t in text.split(",")]
    if len(coords) != dim:
        raise FieldError("expected %d coordinates, got %d"
                         % (dim, len(coords)))
    return Point(tuple(coords))


def _load_witness(path):
    with open(path) as f:
        return witness_from_json(f.read())


def _finish_witness(w, args):
    _emit(witness_to_json(w), args.out)
    _info("points=%d unit_edges=%d tower_depth=%d derivation_depth=%d"
          % (len(w.points), len(w.unit_edges), w.tower_depth(),
             w.derivation_depth()))
    return 0


def cmd_construct(args):
    anchor = _parse_point(args.anchor, args.dim) if args.anchor else None
    direction = (tuple(parse_expr(t) for t in args.direction.split(","))
                 if args.direction else None)
    w = compile_expr(args.dist, args.dim, anchor=anchor, direction=direction)
    return _finish_witness(w, args)


def cmd_verify(args):
    w = _load_witness(args.witness)
    report = verify(w)
    _emit(dumps(report.to_dict()), args.out)
    _info("verify: %s" % ("PASS" if report.passed else "FAIL"))
    return 0 if report.passed else 1


def _points_arg(texts, dim):
    return [_parse_point(t, dim) for t in texts]


def cmd_hyperplane(args):
    pts = _points_arg(args.point, args.dim)
    return _finish_witness(hyperplane_witness(pts, args.dim), args)


def cmd_equal(args):
    pts = _points_arg(args.point, args.dim)
    if len(pts) != 4:
        raise RelationError("equal needs exactly four points")
    w = equal_distance_witness(pts[0], pts[1], pts[2], pts[3], args.dim)
    return _finish_witness(w, args)


def cmd_less(args):
    pts = _points_arg(args.point, args.dim)
    if len(pts) != 4:
        raise RelationError("less needs exactly four points")
    return _finish_witness(less_than_witness(*pts), args)


def cmd_distinct(args):
    pts = _points_arg(args.point, args.dim)
    if len(pts) != 2:
        raise RelationError("distinct needs exactly two points")
    return _finish_witness(distinct_witness(*pts), args)


def cmd_falsify(args):
    w = _load_witness(args.witness)
    report = falsify_search(w, restarts=args.restarts, seed=args.seed,
                            tau_unit=args.tau_unit, margin=args.margin)
    _emit(dumps(report.to_dict()), args.out)
    _info("falsify: %s" % ("violation found"
                           if report.violation_found else "no violation"))
    return 1 if report.violation_found else 0


def cmd_rigidity(args):
    with open(args.framework) as f:
        fw = framework_from_json(f.read())
    report = is_rigid(fw, tol=args.tol)
    _emit(dumps(report.to_dict()), args.out)
    _info("rigidity: %s" % report.verdict)
    return 0


def cmd_svg(args):
    w = _load_witness(args.witness)
    _emit(render_svg(w), args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="unitwitness",
        description="Construct and verify unit-distance witness sets.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="compile a distance expression")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--dist", required=True)
    c.add_argument("--anchor")
    c.add_argument("--direction")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="exactly verify a witness file")
    v.add_argument("witness")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("hyperplane", help="hyperplane-incidence witness")
    h.add_argument("--dim", type=int, required=True)
    h.add_argument("--point", action="append", required=True,
                   help="comma-separated exact coordinates; repeatable")
    h.add_argument("--out")
    h.set_defaults(func=cmd_hyperplane)

    e = sub.add_parser("equal", help="equal-distance witness (4 points)")
    e.add_argument("--dim", type=int, required=True)
    e.add_argument("--point", action="append", required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_equal)

    l = sub.add_parser("less", help="strict-inequality witness (4 points)")
    l.add_argument("--dim", type=int, required=True)
    l.add_argument("--point", action="append", required=True)
    l.add_argument("--out")
    l.set_defaults(func=cmd_less)

    d = sub.add_parser("distinct", help="distinctness witness (2 points)")
    d.add_argument("--dim", type=int, required=True)
    d.add_argument("--point", action="append", required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_distinct)

    f = sub.add_parser("falsify", help="numerical counterexample search")
    f.add_argument("witness")
    f.add_argument("--restarts", type=int, default=50)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--tau-unit", type=float, default=1e-10)
    f.add_argument("--margin", type=float, default=1e-3)
    f.add_argument("--out")
    f.set_defaults(func=cmd_falsify)

    r = sub.add_parser("rigidity", help="first-order rigidity test")
    r.add_argument("framework")
    r.add_argument("--tol", type=float, default=1e-8)
    r.add_argument("--out")
    r.set_defaults(func=cmd_rigidity)

    s = sub.add_parser("svg", help="render a planar witness to SVG")
    s.add_argument("witness")
    s.add_argument("--out")
    s.set_defaults(func=cmd_svg)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as e:
        _info("error: %s" % e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
