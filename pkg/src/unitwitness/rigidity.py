"""Numerical rigidity analysis and the falsifier.

This module deliberately leaves exact arithmetic behind: frameworks carry
floating coordinates, rigidity is decided by the rank of the first-order
constraint system, and the falsifier runs a seeded random-restart
least-squares search for unit-preserving maps that would violate a
witness's claim.  A found violation disproves a claim; absence of one is
evidence, not proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .field import rational
from .gadgets import GadgetError, force_approx
from .geom import Point, dist_sq
from .witness import (APPROX, Builder, Claim, EXACT_DISTANCE, GadgetNode,
                      LESS_THAN, UPPER_BOUND)


class RigidityError(ValueError):
    pass


@dataclass
class Framework:
    """A bar-joint framework: floating vertices, unit-length edges."""

    dim: int
    vertices: list
    edges: list
    alpha: int = None
    beta: int = None

    def coords(self):
        return np.asarray(self.vertices, dtype=float)


@dataclass
class RigidityReport:
    rank: int
    expected_rank: int
    smallest_relevant_sv: float
    verdict: str  # rigid | flexible | indeterminate

    def to_dict(self):
        return {"rank": self.rank, "expected_rank": self.expected_rank,
                "smallest_relevant_sv": self.smallest_relevant_sv,
                "verdict": self.verdict}


@dataclass
class SearchReport:
    trials: int
    best_unit_residual: float
    best_claim_deviation: float
    near_feasible: list = field(default_factory=list)
    violation_found: bool = False

    def to_dict(self):
        return {"trials": self.trials,
                "best_unit_residual": self.best_unit_residual,
                "best_claim_deviation": self.best_claim_deviation,
                "near_feasible": self.near_feasible,
                "violation_found": self.violation_found}


# ---------------------------------------------------------------------------
# the distance-coordinate map
# ---------------------------------------------------------------------------

def unit_simplex_points(n):
    """n+1 points in n-space, pairwise at exact distance 1."""
    from .geom import _canonical_simplex
    return [Point(c) for c in _canonical_simplex(n + 1)]


def phi_map(anchors, y):
    """Distances from y to n+1 pairwise-unit anchor points.

    Injective on n-space: a point is determined by its distances to the
    vertices of a nondegenerate simplex.
    """
    n = y.dim
    if len(anchors) != n + 1:
        raise RigidityError("need n+1 anchor points")
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            if not (dist_sq(anchors[i], anchors[j]) - 1).is_zero():
                raise RigidityError("anchors must be pairwise at distance 1")
    return tuple(dist_sq(p, y).sqrt() for p in anchors)


# ---------------------------------------------------------------------------
# infinitesimal rigidity
# ---------------------------------------------------------------------------

def rigidity_matrix(fw):
    """First-order edge-length constraint matrix, one row per edge."""
    x = fw.coords()
    n = fw.dim
    m = np.zeros((len(fw.edges), n * len(fw.vertices)))
    for r, (i, j) in enumerate(fw.edges):
        d = x[i] - x[j]
        m[r, n * i:n * i + n] = d
        m[r, n * j:n * j + n] = -d
    return m


def _spans_affinely(fw, tol):
    x = fw.coords()
    if len(x) < fw.dim + 1:
        return False
    rows = x[1:] - x[0]
    sv = np.linalg.svd(rows, compute_uv=False)
    return (sv > tol).sum() >= fw.dim


def is_rigid(fw, tol=1e-8):
    """Rank test of the constraint system against the rigid-motion count."""
    n = fw.dim
    nv = len(fw.vertices)
    expected = n * nv - n * (n + 1) // 2
    m = rigidity_matrix(fw)
    sv = np.linalg.svd(m, compute_uv=False) if m.size else np.zeros(0)
    rank = int((sv > tol).sum())
    if rank < len(sv):
        margin = float(sv[rank - 1] if rank else 0.0)
        boundary = float(sv[rank]) if rank < len(sv) else 0.0
    else:
        margin = float(sv[-1]) if len(sv) else 0.0
        boundary = 0.0
    if not _spans_affinely(fw, tol):
        return RigidityReport(rank, expected, margin, "indeterminate")
    if rank == expected:
        verdict = "rigid" if margin > tol else "indeterminate"
    else:
        # a clear spectral gap below the expected rank certifies a flex
        verdict = "flexible" if boundary <= tol else "indeterminate"
    return RigidityReport(rank, expected, margin, verdict)


# ---------------------------------------------------------------------------
# assembly from a rigid framework
# ---------------------------------------------------------------------------

def _rationalize(v, max_den=10 ** 12):
    from fractions import Fraction
    f = Fraction(float(v)).limit_denominator(max_den)
    return rational(f.numerator, f.denominator)


def assemble_from_rigid(fw, alpha, beta, eps, tol=1e-8):
    """Approximate witness for the framework distance |alpha - beta|.

    Anchors a pairwise-unit simplex exactly and ties every framework
    vertex to each anchor with an approximation chain.  The output is
    marked approximate: framework coordinates are rationalized first, so
    its claims certify the rationalized configuration only.
    """
    if eps <= 0:
        raise RigidityError("approximation tolerance must be positive")
    report = is_rigid(fw, tol)
    if report.verdict != "rigid":
        raise RigidityError("framework is not certified rigid (verdict %s)"
                            % report.verdict)
    n = fw.dim
    b = Builder(n)
    anchors = [b.add_point(p) for p in unit_simplex_points(n)]
    for i in range(len(anchors)):
        for j in range(i + 1, len(anchors)):
            b.add_edge(anchors[i], anchors[j])
    epsc = _rationalize(eps)
    vidx = []
    children = []
    for v in fw.vertices:
        iv = b.add_point(Point(tuple(_rationalize(c) for c in v)))
        vidx.append(iv)
        for ia in anchors:
            node, _ = force_approx(b, ia, iv, epsc)
            children.append(node)
    ia, ib = vidx[alpha], vidx[beta]
    value = dist_sq(b.points[ia], b.points[ib]).sqrt()
    b.add_claim(Claim(EXACT_DISTANCE, (ia, ib), value=value))
    node = GadgetNode("rigid_assembly",
                      {"eps": epsc, "vertices": len(fw.vertices)}, children)
    return b.finish(node, approximate=True)


# ---------------------------------------------------------------------------
# the falsifier
# ---------------------------------------------------------------------------

def _claim_deviation(claim, pts, g):
    """How far the mapped configuration strays from the claimed relation."""
    kind = claim.kind
    idx = claim.indices
    if kind in (EXACT_DISTANCE, APPROX):
        target = float(claim.value)
        d = np.linalg.norm(g[idx[0]] - g[idx[1]])
        dev = abs(d - target)
        if kind == APPROX:
            dev = max(0.0, dev - float(claim.eps))
        return dev
    if kind == UPPER_BOUND:
        d = np.linalg.norm(g[idx[0]] - g[idx[1]])
        return max(0.0, d - float(claim.value))
    if kind == "equal_distance":
        d1 = np.linalg.norm(g[idx[0]] - g[idx[1]])
        d2 = np.linalg.norm(g[idx[2]] - g[idx[3]])
        return abs(d1 - d2)
    if kind == LESS_THAN:
        d1 = np.linalg.norm(g[idx[0]] - g[idx[1]])
        d2 = np.linalg.norm(g[idx[2]] - g[idx[3]])
        return max(0.0, d1 - d2)
    if kind == "distinct":
        d = np.linalg.norm(g[idx[0]] - g[idx[1]])
        return max(0.0, 1e-3 - d)  # collapse counts as full deviation
    if kind == "hyperplane":
        rows = g[list(idx)]
        rows = rows - rows.mean(axis=0)
        sv = np.linalg.svd(rows, compute_uv=False)
        return float(sv[-1]) if len(sv) >= rows.shape[1] else 0.0
    return 0.0


def falsify_search(w, restarts=50, seed=0, tau_unit=1e-10, margin=1e-3,
                   dev_tol=1e-5):
    """Seeded random-restart search for a unit-preserving counterexample.

    Minimizes the unit-edge residual while pushing the first claim's
    quantity at least `margin` away from its claimed value; any map with
    unit residual below tau_unit is recorded with its claim deviation.
    """
    if not w.claims:
        raise RigidityError("witness has no claims to falsify")
    n = w.dim
    pts = np.array([[float(c) for c in p.coords] for p in w.points])
    edges = np.asarray(w.unit_edges, dtype=int).reshape(-1, 2)
    claim = w.claims[0]
    rng = np.random.default_rng(seed)
    spread = float(np.ptp(pts)) + 1.0
    nv = len(w.points)
    ci, cj = (claim.indices + claim.indices)[:2]
    target = float(claim.value) if claim.value is not None else 0.0

    def objective(flat):
        g = flat.reshape(nv, n)
        grad = np.zeros_like(g)
        total = 0.0
        if len(edges):
            d = g[edges[:, 0]] - g[edges[:, 1]]
            lens = np.sqrt((d * d).sum(axis=1))
            lens = np.maximum(lens, 1e-12)
            res = lens - 1.0
            total += float((res * res).sum())
            coef = (2.0 * res / lens)[:, None] * d
            np.add.at(grad, edges[:, 0], coef)
            np.add.at(grad, edges[:, 1], -coef)
        # push the claimed quantity away from its claimed value
        dvec = g[ci] - g[cj]
        dlen = max(float(np.linalg.norm(dvec)), 1e-12)
        gap = margin - abs(dlen - target)
        if gap > 0.0:
            total += gap * gap
            s = -2.0 * gap * (1.0 if dlen >= target else -1.0)
            grad[ci] += s * dvec / dlen
            grad[cj] -= s * dvec / dlen
        return total, grad.ravel()

    best_res = float("inf")
    best_dev = 0.0
    near = []
    violation = False
    for _ in range(restarts):
        x0 = rng.normal(scale=spread, size=nv * n)
        sol = minimize(objective, x0, jac=True, method="L-BFGS-B",
                       options={"maxiter": 500})
        g = sol.x.reshape(nv, n)
        if len(edges):
            d = g[edges[:, 0]] - g[edges[:, 1]]
            lens = np.sqrt((d * d).sum(axis=1))
            res = float(np.abs(lens - 1.0).max())
        else:
            res = 0.0
        dev = _claim_deviation(claim, pts, g)
        if res < best_res:
            best_res = res
        if res < tau_unit:
            near.append({"unit_residual": res, "claim_deviation": dev})
            if dev > best_dev:
                best_dev = dev
            if dev > dev_tol:
                violation = True
    near.sort(key=lambda e: -e["claim_deviation"])
    return SearchReport(trials=restarts, best_unit_residual=best_res,
                        best_claim_deviation=best_dev,
                        near_feasible=near[:20], violation_found=violation)
