"""Witness sets: deduplicated point sets with unit edges, claims and a
derivation tree of gadget applications."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .field import CN, prune
from .geom import Point, dist_sq


# claim kinds
EXACT_DISTANCE = "exact_distance"
UPPER_BOUND = "upper_bound"
APPROX = "approx"
DISTINCT = "distinct"
HYPERPLANE = "hyperplane"
EQUAL_DISTANCE = "equal_distance"
LESS_THAN = "less_than"

CLAIM_KINDS = (EXACT_DISTANCE, UPPER_BOUND, APPROX, DISTINCT,
               HYPERPLANE, EQUAL_DISTANCE, LESS_THAN)


@dataclass(frozen=True)
class Claim:
    """A relation the witness enforces on designated point indices."""

    kind: str
    indices: tuple
    value: Optional[CN] = None
    eps: Optional[CN] = None
    via: Optional[int] = None  # chain point certifying an approx claim

    def __post_init__(self):
        if self.kind not in CLAIM_KINDS:
            raise ValueError("unknown claim kind %r" % self.kind)


class GadgetNode:
    """Derivation node: which figure/gadget produced which sub-set.

    Children may be shared between nodes (gadget clouds are reused), so the
    tree is physically a DAG; counts and depths treat it as the fully
    expanded tree, which is the honest number of gadget applications.
    """

    __slots__ = ("tag", "params", "children", "_count", "_depth")

    def __init__(self, tag, params=None, children=()):
        self.tag = tag
        self.params = dict(params or {})
        self.children = tuple(children)
        self._count = None
        self._depth = None

    def node_count(self):
        if self._count is None:
            self._count = 1 + sum(c.node_count() for c in self.children)
        return self._count

    def depth(self):
        if self._depth is None:
            self._depth = 1 + max((c.depth() for c in self.children),
                                  default=0)
        return self._depth

    def __repr__(self):
        return "GadgetNode(%s, %d children)" % (self.tag, len(self.children))


class Builder:
    """Accumulates points (with exact deduplication), unit edges and claims.

    Deduplication buckets points by rounded float coordinates and confirms
    candidates with exact equality, so distinct points are never merged.
    """

    _SCALE = 1e6

    def __init__(self, dim):
        if dim < 2:
            raise ValueError("dimension must be at least 2")
        self.dim = dim
        self.points = []
        self.claims = []
        self._edges = set()
        self._buckets = {}
        # (plan id, anchor indices) -> derivation node; repeated gadget
        # applications on the same anchors are exact no-ops, so skip them.
        self.memo = {}

    def add_point(self, p):
        if p.dim != self.dim:
            raise ValueError("point dimension mismatch")
        p = Point(tuple(prune(c) for c in p.coords))
        scale = self._SCALE
        base = tuple(int(round(v * scale)) for v in p.f)
        buckets = self._buckets
        points = self.points
        for key in product(*[(c - 1, c, c + 1) for c in base]):
            for idx in buckets.get(key, ()):
                if points[idx] == p:
                    return idx
        idx = len(points)
        points.append(p)
        buckets.setdefault(base, []).append(idx)
        return idx

    def add_edge(self, i, j):
        if i == j:
            raise ValueError("degenerate unit edge")
        self._edges.add((i, j) if i < j else (j, i))

    def add_claim(self, claim):
        self.claims.append(claim)

    def finish(self, derivation, approximate=False):
        return WitnessSet(dim=self.dim, points=list(self.points),
                          unit_edges=sorted(self._edges),
                          claims=list(self.claims), derivation=derivation,
                          approximate=approximate)


@dataclass
class WitnessSet:
    """Finite point set whose unit-distance structure forces its claims."""

    dim: int
    points: list
    unit_edges: list
    claims: list
    derivation: GadgetNode
    approximate: bool = False

    def __post_init__(self):
        npts = len(self.points)
        for i, j in self.unit_edges:
            if not (0 <= i < npts and 0 <= j < npts):
                raise ValueError("edge index out of range")
        for c in self.claims:
            for i in c.indices:
                if not 0 <= i < npts:
                    raise ValueError("claim index out of range")

    def tower_depth(self):
        return max((c.tower.depth for p in self.points for c in p.coords),
                   default=0)

    def derivation_depth(self):
        return self.derivation.depth() if self.derivation else 0

    def size(self):
        return len(self.points)


def check_exact_unit(points, i, j):
    return (dist_sq(points[i], points[j]) - 1).is_zero()
