"""Witness and framework JSON (version 1).

Exact values are serialized as strings of the closed field-expression
grammar, so files round-trip with no loss; floating approximations are
included alongside for quick plotting and screening.  Serialization is
canonical (fixed key order, no whitespace variation) so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .field import CN, FieldError, parse_expr
from .geom import Point
from .rigidity import Framework
from .witness import Claim, GadgetNode, WitnessSet

VERSION = "1"


class FormatError(ValueError):
    pass


def _value_out(v):
    if v is None:
        return None
    if isinstance(v, CN):
        return v.to_expr()
    if isinstance(v, Fraction):
        return ("%d" % v.numerator if v.denominator == 1
                else "%d/%d" % (v.numerator, v.denominator))
    if isinstance(v, (int, str, bool)):
        return v
    raise FormatError("unserializable parameter %r" % (v,))


def _claim_out(c):
    return {"kind": c.kind, "indices": list(c.indices),
            "value": _value_out(c.value), "eps": _value_out(c.eps),
            "via": c.via}


def _node_out(n):
    return {"tag": n.tag,
            "params": {k: _value_out(v) for k, v in sorted(n.params.items())},
            "children": [_node_out(c) for c in n.children]}


def witness_to_dict(w):
    return {
        "version": VERSION,
        "dim": w.dim,
        "points": [[c.to_expr() for c in p.coords] for p in w.points],
        "approx_points": [[float(c) for c in p.coords] for p in w.points],
        "unit_edges": [list(e) for e in w.unit_edges],
        "claims": [_claim_out(c) for c in w.claims],
        "derivation": _node_out(w.derivation) if w.derivation else None,
        "approximate": w.approximate,
    }


def dumps(obj):
    """Canonical JSON text (deterministic byte-for-byte)."""
    return json.dumps(obj, separators=(",", ":"), sort_keys=False,
                      allow_nan=False)


def witness_to_json(w):
    return dumps(witness_to_dict(w))


def _value_in(s):
    if s is None:
        return None
    if isinstance(s, (int, bool)):
        return s
    try:
        return parse_expr(s)
    except FieldError:
        return s


def _claim_in(d):
    return Claim(kind=d["kind"], indices=tuple(d["indices"]),
                 value=_value_in(d.get("value")),
                 eps=_value_in(d.get("eps")), via=d.get("via"))


def _node_in(d):
    if d is None:
        return None
    return GadgetNode(d["tag"],
                      {k: _value_in(v) for k, v in d["params"].items()},
                      [_node_in(c) for c in d["children"]])


def witness_from_dict(d):
    if d.get("version") != VERSION:
        raise FormatError("unsupported witness file version %r"
                          % d.get("version"))
    try:
        points = [Point(tuple(parse_expr(s) for s in row))
                  for row in d["points"]]
        return WitnessSet(dim=d["dim"], points=points,
                          unit_edges=[tuple(e) for e in d["unit_edges"]],
                          claims=[_claim_in(c) for c in d["claims"]],
                          derivation=_node_in(d.get("derivation")),
                          approximate=bool(d.get("approximate", False)))
    except (KeyError, TypeError, FieldError, ValueError) as e:
        raise FormatError("malformed witness file: %s" % e) from e


def witness_from_json(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError("not valid JSON: %s" % e) from e
    if not isinstance(d, dict):
        raise FormatError("witness file must be a JSON object")
    return witness_from_dict(d)


def framework_to_dict(fw):
    return {"dim": fw.dim, "vertices": [list(map(float, v))
                                        for v in fw.vertices],
            "edges": [list(e) for e in fw.edges],
            "alpha": fw.alpha, "beta": fw.beta}


def framework_from_json(text):
    try:
        d = json.loads(text)
        return Framework(dim=int(d["dim"]),
                         vertices=[list(map(float, v))
                                   for v in d["vertices"]],
                         edges=[tuple(e) for e in d["edges"]],
                         alpha=d.get("alpha"), beta=d.get("beta"))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise FormatError("malformed framework file: %s" % e) from e
