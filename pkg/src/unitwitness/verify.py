"""Exact verification of witness sets.

Every declared unit edge and every claim is confirmed with exact
arithmetic; floating-point distances are used only to screen candidate
pairs before the exact confirmation, never to accept or reject anything
on their own.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .field import CN, join_towers, lift
from .geom import Point, dist_sq, nullspace, vsub
from .rigidity import Framework
from .witness import (APPROX, DISTINCT, EQUAL_DISTANCE, EXACT_DISTANCE,
                      HYPERPLANE, LESS_THAN, UPPER_BOUND, WitnessSet)

# float screening slack for the unit-pair discovery scan; any true unit
# pair sits far inside this band, and every candidate is confirmed exactly
_SCREEN = 1e-7


@dataclass
class ClaimResult:
    kind: str
    indices: tuple
    holds: bool
    detail: str = ""

    def to_dict(self):
        return {"kind": self.kind, "indices": list(self.indices),
                "holds": self.holds, "detail": self.detail}


@dataclass
class VerifyReport:
    n_points: int
    declared_edges: int
    confirmed_edges: int
    discovered_edges: int
    bad_edges: list
    claim_results: list
    undeclared_unit_pairs: list
    tower_depth: int
    derivation_depth: int

    @property
    def passed(self):
        return (not self.bad_edges
                and all(c.holds for c in self.claim_results))

    def to_dict(self):
        return {"passed": self.passed, "n_points": self.n_points,
                "declared_edges": self.declared_edges,
                "confirmed_edges": self.confirmed_edges,
                "discovered_edges": self.discovered_edges,
                "bad_edges": [list(e) for e in self.bad_edges],
                "claims": [c.to_dict() for c in self.claim_results],
                "undeclared_unit_pairs":
                    [list(e) for e in self.undeclared_unit_pairs],
                "tower_depth": self.tower_depth,
                "derivation_depth": self.derivation_depth}


def _is_unit(p, q):
    return (dist_sq(p, q) - 1).is_zero()


def _rebase(points):
    """Points re-expressed over one shared tower, so pairwise exact
    arithmetic never pays a per-operation tower join."""
    towers = {}
    for p in points:
        for c in p.coords:
            towers.setdefault(id(c.tower), c.tower)
    ts = sorted(towers.values(), key=lambda t: t.depth, reverse=True)
    if not ts:
        return points
    master = ts[0]
    for t in ts[1:]:
        master = join_towers(master, t)
    return [Point(tuple(lift(c, master) for c in p.coords))
            for p in points]


def unit_pairs(points, known=()):
    """All index pairs at exact distance 1 (float screen, exact confirm).

    Pairs listed in `known` are taken as already exactly confirmed and
    skip the recheck.
    """
    if len(points) < 2:
        return []
    known = {(i, j) if i < j else (j, i) for (i, j) in known}
    coords = np.array([p.f for p in points])
    tree = cKDTree(coords)
    cands = tree.query_pairs(1.0 + _SCREEN, output_type="ndarray")
    if len(cands):
        diffs = coords[cands[:, 0]] - coords[cands[:, 1]]
        d2 = np.einsum("ij,ij->i", diffs, diffs)
        cands = cands[np.abs(d2 - 1.0) <= 3.0 * _SCREEN]
    out = []
    for i, j in cands:
        i, j = int(i), int(j)
        pair = (i, j) if i < j else (j, i)
        if pair in known or _is_unit(points[i], points[j]):
            out.append(pair)
    out.sort()
    return out


def _check_claim(w, c, pts=None):
    if pts is None:
        pts = w.points
    idx = c.indices
    if c.kind == EXACT_DISTANCE:
        ok = (dist_sq(pts[idx[0]], pts[idx[1]])
              - c.value * c.value).is_zero()
        return ClaimResult(c.kind, idx, ok,
                           "" if ok else "distance differs from claim")
    if c.kind == UPPER_BOUND:
        diff = dist_sq(pts[idx[0]], pts[idx[1]]) - c.value * c.value
        ok = diff.sign() <= 0
        return ClaimResult(c.kind, idx, ok,
                           "" if ok else "distance exceeds the bound")
    if c.kind == APPROX:
        # certificate: a hinge with two exactly-rational legs, the second
        # at most eps/2
        if c.via is None:
            return ClaimResult(c.kind, idx, False, "missing hinge point")
        z = pts[c.via]
        leg1 = dist_sq(pts[idx[0]], z)
        leg2 = dist_sq(z, pts[idx[1]])
        if not (leg1.sqrt().is_rational() and leg2.sqrt().is_rational()):
            return ClaimResult(c.kind, idx, False, "legs are not rational")
        half_eps_sq = c.eps * c.eps * CN.from_rational(1, 4)
        if (leg2 - half_eps_sq).sign() > 0:
            return ClaimResult(c.kind, idx, False,
                               "second leg exceeds half the tolerance")
        lo = c.value - leg1.sqrt()
        if (lo * lo - leg2).sign() > 0:
            return ClaimResult(c.kind, idx, False,
                               "legs do not bracket the claimed value")
        return ClaimResult(c.kind, idx, True)
    if c.kind == DISTINCT:
        ok = pts[idx[0]] != pts[idx[1]]
        return ClaimResult(c.kind, idx, ok,
                           "" if ok else "points coincide")
    if c.kind == HYPERPLANE:
        dim = w.dim
        sel = [pts[i] for i in idx]
        if len(sel) <= dim:
            return ClaimResult(c.kind, idx, True, "trivially coplanar")
        rows = [vsub(p.coords, sel[0].coords) for p in sel[1:]]
        ok = bool(nullspace(rows, dim))
        return ClaimResult(c.kind, idx, ok,
                           "" if ok else "points affinely span the space")
    if c.kind == EQUAL_DISTANCE:
        ok = (dist_sq(pts[idx[0]], pts[idx[1]])
              - dist_sq(pts[idx[2]], pts[idx[3]])).is_zero()
        return ClaimResult(c.kind, idx, ok,
                           "" if ok else "distances differ")
    if c.kind == LESS_THAN:
        diff = (dist_sq(pts[idx[2]], pts[idx[3]])
                - dist_sq(pts[idx[0]], pts[idx[1]]))
        ok = diff.sign() > 0
        return ClaimResult(c.kind, idx, ok,
                           "" if ok else "first distance is not smaller")
    return ClaimResult(c.kind, idx, False, "unknown claim kind")


def verify(w):
    """Exact verification report for a witness set."""
    pts = w.points
    bad = []
    confirmed = 0
    for (i, j) in w.unit_edges:
        if _is_unit(pts[i], pts[j]):
            confirmed += 1
        else:
            bad.append((i, j))
    declared = set(map(tuple, w.unit_edges))
    confirmed_set = declared - set(map(tuple, bad))
    discovered = unit_pairs(pts, known=confirmed_set)
    undeclared = [e for e in discovered if e not in declared]
    results = [_check_claim(w, c, pts) for c in w.claims]
    return VerifyReport(
        n_points=len(pts), declared_edges=len(w.unit_edges),
        confirmed_edges=confirmed, discovered_edges=len(discovered),
        bad_edges=bad, claim_results=results,
        undeclared_unit_pairs=undeclared,
        tower_depth=w.tower_depth(),
        derivation_depth=w.derivation_depth())


def unit_graph(w):
    """Floating framework over all exact unit pairs of the witness."""
    edges = unit_pairs(w.points)
    vertices = [[float(c) for c in p.coords] for p in w.points]
    return Framework(dim=w.dim, vertices=vertices, edges=edges)
