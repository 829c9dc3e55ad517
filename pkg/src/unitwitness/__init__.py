"""Exact unit-distance witness constructions with arithmetic over
real quadratic towers."""

from .field import (CN, ONE, ZERO, ConstructibleNumber, ExprNode, FieldError,
                    Tower, eval_ast, join_towers, lift, parse_ast, parse_expr,
                    prune)
from .gadgets import (GadgetError, approx_gadget, bound_gadget, compile_expr,
                      diff_sum, divide, double, force_approx, force_distance,
                      multiple, pyth_diff, ratio, scale_up, sqrt_gadget,
                      unit_pair)
from .geom import GeometryError, Hyperplane, Point
from .io import (FormatError, framework_from_json, framework_to_dict,
                 witness_from_json, witness_to_dict, witness_to_json)
from .relations import (RelationError, distinct_witness,
                        equal_distance_witness, hyperplane_witness,
                        less_than_witness, proposition_reflections)
from .rigidity import (Framework, RigidityError, RigidityReport, SearchReport,
                       assemble_from_rigid, falsify_search, is_rigid,
                       phi_map, rigidity_matrix, unit_simplex_points)
from .svg import SvgError, render_svg
from .verify import VerifyReport, unit_graph, verify
from .witness import Builder, Claim, GadgetNode, WitnessSet

__all__ = [
    "CN", "ConstructibleNumber", "Tower", "ExprNode", "FieldError",
    "ZERO", "ONE", "parse_expr", "parse_ast", "eval_ast", "join_towers",
    "lift", "prune",
    "Point", "Hyperplane", "GeometryError",
    "GadgetError", "unit_pair", "scale_up", "bound_gadget", "double",
    "multiple", "divide", "pyth_diff", "diff_sum", "ratio", "sqrt_gadget",
    "approx_gadget", "compile_expr", "force_distance", "force_approx",
    "RelationError", "hyperplane_witness", "equal_distance_witness",
    "less_than_witness", "distinct_witness", "proposition_reflections",
    "Framework", "RigidityError", "RigidityReport", "SearchReport",
    "rigidity_matrix", "is_rigid", "phi_map", "unit_simplex_points",
    "assemble_from_rigid", "falsify_search",
    "VerifyReport", "verify", "unit_graph",
    "FormatError", "witness_to_dict", "witness_to_json",
    "witness_from_json", "framework_to_dict", "framework_from_json",
    "SvgError", "render_svg",
    "Builder", "Claim", "GadgetNode", "WitnessSet",
]
