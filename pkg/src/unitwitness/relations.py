"""Witness constructors for non-distance relations.

Beyond forcing a single distance, unit-distance gadgets can force richer
relations: that designated points stay on a common affine hyperplane
(via inversor linkage cells), that two distances stay equal (via a
two-mirror reduction to hyperplane-symmetric instances), that one stays
strictly below another, and that two points stay distinct.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import rational, ZERO, ONE
from .gadgets import GadgetError, force_approx, force_distance
from .geom import (GeometryError, Hyperplane, Point, dist_sq, dot,
                   householder_basis, invert, mirror_between, norm_sq,
                   nullspace, project_onto, reflect, regular_simplex,
                   sphere_intersect_point, translate, vadd, vscale, vsub)
from .witness import (Builder, Claim, DISTINCT, EQUAL_DISTANCE, GadgetNode,
                      HYPERPLANE, LESS_THAN)


class RelationError(ValueError):
    pass


_HALF = rational(1, 2)
_THIRD = rational(1, 3)


@dataclass(frozen=True)
class PeaucellierCell:
    """Indices of one inversor linkage cell inside a witness set.

    The linkage pins the image of x onto the image hyperplane: the rhombus
    x-b-a-b' keeps images of x and a inverses with respect to the sphere
    of radius sqrt(32)*u about the image of o, while |p-a| = 4u keeps the
    image of a on the sphere that is the inverse of the hyperplane.
    """

    p: int
    o: int
    t: int
    x: int
    a: int
    b: tuple
    u: int


def _canonical_frame(dim):
    return tuple(tuple(ONE if j == i else ZERO for j in range(dim))
                 for i in range(dim))


def _plane_of(points):
    """An exact hyperplane through all the points, or an error."""
    dim = points[0].dim
    rows = [vsub(p.coords, points[0].coords) for p in points[1:]]
    kernel = nullspace(rows, dim)
    if not kernel:
        raise RelationError("points do not lie on a common hyperplane")
    return Hyperplane(points[0], kernel[0])


def _unit_normal(plane):
    n = plane.normal
    return vscale(n, ONE / norm_sq(n).sqrt())


def _pick_apart(points, plane):
    """A point of the plane distinct from every listed point."""
    cen = points[0].coords
    for p in points[1:]:
        cen = vadd(cen, p.coords)
    cen = vscale(cen, rational(1, len(points)))
    cand = Point(cen)
    normal = _unit_normal(plane)
    _, frame = householder_basis(normal)
    step = ONE
    while True:
        if all(cand != p for p in points):
            return cand
        cand = translate(cand, vscale(frame[0], step))
        step = step * _HALF


def _least_radius(p, targets):
    """The least positive integer u with |p - x| <= 2u for every target."""
    u = 1
    for x in targets:
        d = dist_sq(p, x)
        while (d - rational(4 * u * u)).sign() > 0:
            u += 1
    return u


def _hyperplane_cells(b, idxs, plane):
    """Inversor linkage cells forcing the indexed points onto a common
    image hyperplane; returns (derivation children, cells)."""
    n = b.dim
    pts = [b.points[i] for i in idxs]
    for p in pts:
        if not plane.contains(p):
            raise RelationError("designated point is off the hyperplane")
    P = _pick_apart(pts, plane)
    u = _least_radius(P, pts)
    uc = rational(u)
    normal = _unit_normal(plane)
    O = translate(P, vscale(normal, rational(4 * u)))
    power = rational(32 * u * u)
    ip = b.add_point(P)
    io = b.add_point(O)
    hint = _canonical_frame(n)
    children = [force_distance(b, ip, io, rational(4 * u))]
    cells = []
    for idx, X in zip(idxs, pts):
        T = sphere_intersect_point(P, uc, X, uc, hint, +1)
        A = invert(O, power, X)
        it = b.add_point(T)
        ia = b.add_point(A)
        children.append(force_distance(b, ip, it, uc))
        children.append(force_distance(b, it, idx, uc))
        children.append(force_distance(b, ip, ia, rational(4 * u)))
        # rhombus joints: the sphere |Q-X| = |Q-A| = 2u is nonempty because
        # |X-A| < 4u whenever X != P
        axis = vsub(A.coords, X.coords)
        axis_len = norm_sq(axis).sqrt()
        mid = Point(vscale(vadd(X.coords, A.coords), _HALF))
        rho_sq = rational(4 * u * u) - dist_sq(X, A) * rational(1, 4)
        if rho_sq.sign() <= 0:
            raise RelationError("degenerate rhombus: point coincides "
                                "with the linkage anchor")
        _, frame = householder_basis(vscale(axis, ONE / axis_len))
        edge = (rho_sq * rational(2 * n, n - 1)).sqrt()
        bidx = []
        for q in regular_simplex(n, edge, mid, frame):
            iq = b.add_point(q)
            bidx.append(iq)
            children.append(force_distance(b, io, iq, rational(6 * u)))
            children.append(force_distance(b, idx, iq, rational(2 * u)))
            children.append(force_distance(b, ia, iq, rational(2 * u)))
        for s in range(len(bidx)):
            for t in range(s + 1, len(bidx)):
                gap = dist_sq(b.points[bidx[s]], b.points[bidx[t]]).sqrt()
                node, _ = force_approx(b, bidx[s], bidx[t], gap * _HALF)
                children.append(node)
        cells.append(PeaucellierCell(p=ip, o=io, t=it, x=idx, a=ia,
                                     b=tuple(bidx), u=u))
    return children, cells


def hyperplane_witness(X, n):
    """Witness forcing the images of the given points onto a common
    affine hyperplane."""
    if not X:
        raise RelationError("need at least one point")
    if any(p.dim != n for p in X):
        raise RelationError("dimension mismatch")
    plane = _plane_of(X) if len(X) > 1 else Hyperplane(
        X[0], tuple(ONE if i == 0 else ZERO for i in range(n)))
    b = Builder(n)
    idxs = [b.add_point(p) for p in X]
    children, cells = _hyperplane_cells(b, idxs, plane)
    node = GadgetNode("hyperplane", {"m": len(X), "u": cells[0].u}, children)
    b.add_claim(Claim(HYPERPLANE, tuple(idxs)))
    w = b.finish(node)
    w.cells = cells
    return w


def proposition_reflections(J, K, L, M):
    """Two mirrors splitting an equal-distance instance into symmetric ones.

    Returns (A, B, H1, H2) with A the reflection of J and B the reflection
    of K across H1, and H2 fixing A while reflecting B to M.  Degenerate
    coincidences return None in place of a mirror (identity map).
    """
    if not (dist_sq(J, K) - dist_sq(L, M)).is_zero():
        raise RelationError("the two distances must be equal")
    A = L
    if J == L:
        H1 = None
        B = K
    else:
        H1 = mirror_between(J, L)
        B = reflect(K, H1)
    H2 = None if B == M else mirror_between(B, M)
    return A, B, H1, H2


def _least_leg(h_sq):
    """Least positive integer s with s^2 strictly above the given square."""
    s = 1
    while (h_sq - rational(s * s)).sign() >= 0:
        s += 1
    return s


def _mirror_simplex(b, plane, apex_idx, s):
    """n points of the plane at exact integer distance s from the apex
    point (a regular simplex inscribed in the intersection sphere)."""
    n = b.dim
    apex = b.points[apex_idx]
    foot = project_onto(apex, plane)
    h_sq = dist_sq(apex, foot)
    rho_sq = rational(s * s) - h_sq
    normal = _unit_normal(plane)
    _, frame = householder_basis(normal)
    edge = (rho_sq * rational(2 * n, n - 1)).sqrt()
    return [b.add_point(q) for q in regular_simplex(n, edge, foot, frame)]


def _symmetric_cell(b, ij, ik, il, im):
    """Forcing structure for one mirror-symmetric equal-distance instance:
    the points indexed by il, im are the mirror images of those indexed by
    ij, ik.  Returns derivation children."""
    J, K = b.points[ij], b.points[ik]
    L, M = b.points[il], b.points[im]
    children = []
    if ij == il and ik == im:
        return children
    if ij == il or ik == im:
        # one designated point lies on the mirror; anchor the mirror with a
        # simplex around the moving pair and pin the fixed point to it
        if ij == il:
            fixed, a, a2 = ij, ik, im
        else:
            fixed, a, a2 = ik, ij, il
        P, Q = b.points[a], b.points[a2]
        plane = mirror_between(P, Q)
        t = _least_leg(dist_sq(P, project_onto(P, plane)))
        ys = _mirror_simplex(b, plane, a, t)
        for iy in ys:
            children.append(force_distance(b, iy, a, rational(t)))
            children.append(force_distance(b, iy, a2, rational(t)))
        cell_children, _ = _hyperplane_cells(b, ys + [fixed], plane)
        children.extend(cell_children)
        gap = dist_sq(P, Q).sqrt()
        node, _ = force_approx(b, a, a2, gap * _HALF)
        children.append(node)
        return children
    plane = mirror_between(J, L)
    if reflect(K, plane) != M:
        raise RelationError("instance is not mirror-symmetric")
    djk = dist_sq(J, K)
    djm = dist_sq(J, M)
    if (djk - djm).is_zero():
        raise RelationError("ambiguous symmetric instance: |JK| = |JM| "
                            "leaves no approximation margin")
    s = _least_leg(dist_sq(J, project_onto(J, plane)))
    t = _least_leg(dist_sq(K, project_onto(K, plane)))
    xs = _mirror_simplex(b, plane, ij, s)
    ys = _mirror_simplex(b, plane, ik, t)
    for ix in xs:
        children.append(force_distance(b, ix, ij, rational(s)))
        children.append(force_distance(b, ix, il, rational(s)))
    for iy in ys:
        children.append(force_distance(b, iy, ik, rational(t)))
        children.append(force_distance(b, iy, im, rational(t)))
    cell_children, _ = _hyperplane_cells(b, xs + ys, plane)
    children.extend(cell_children)
    for (a, c) in ((ij, il), (ik, im)):
        gap = dist_sq(b.points[a], b.points[c]).sqrt()
        node, _ = force_approx(b, a, c, gap * _HALF)
        children.append(node)
    delta = (djk.sqrt() - djm.sqrt()) * _THIRD
    if delta.sign() < 0:
        delta = -delta
    for (a, c) in ((ij, ik), (il, im), (ij, im), (il, ik)):
        node, _ = force_approx(b, a, c, delta)
        children.append(node)
    return children


def equal_distance_witness(J, K, L, M, n):
    """Witness forcing |f(J)f(K)| = |f(L)f(M)|."""
    for p in (J, K, L, M):
        if p.dim != n:
            raise RelationError("dimension mismatch")
    if not (dist_sq(J, K) - dist_sq(L, M)).is_zero():
        raise RelationError("the two distances must be equal")
    b = Builder(n)
    ij, ik = b.add_point(J), b.add_point(K)
    il, im = b.add_point(L), b.add_point(M)
    children = []
    if not (ij == il and ik == im):
        if ij == il or ik == im:
            children.extend(_symmetric_cell(b, ij, ik, il, im))
        else:
            # split through the intermediate reflected pair: the first
            # instance is symmetric by construction, the second fixes the
            # shared endpoint
            A, B, H1, H2 = proposition_reflections(J, K, L, M)
            ia, ib = b.add_point(A), b.add_point(B)
            children.extend(_symmetric_cell(b, ij, ik, ia, ib))
            children.extend(_symmetric_cell(b, ia, ib, il, im))
    node = GadgetNode("equal_distance", {}, children)
    b.add_claim(Claim(EQUAL_DISTANCE, (ij, ik, il, im)))
    return b.finish(node)


def distinct_witness(p, q):
    """Witness forcing f(p) != f(q)."""
    if p == q:
        raise RelationError("points must be distinct")
    b = Builder(p.dim)
    i, j = b.add_point(p), b.add_point(q)
    gap = dist_sq(p, q).sqrt()
    node, via = force_approx(b, i, j, gap * _HALF)
    b.add_claim(Claim("approx", (i, j), value=gap, eps=gap * _HALF, via=via))
    b.add_claim(Claim(DISTINCT, (i, j)))
    return b.finish(GadgetNode("distinct", {}, (node,)))


def less_than_witness(J, K, L, M):
    """Witness forcing |f(J)f(K)| < |f(L)f(M)|."""
    djk = dist_sq(J, K).sqrt()
    dlm = dist_sq(L, M).sqrt()
    eps = (dlm - djk) * _THIRD
    if eps.sign() <= 0:
        raise RelationError("requires |JK| < |LM| exactly")
    b = Builder(J.dim)
    ij, ik = b.add_point(J), b.add_point(K)
    il, im = b.add_point(L), b.add_point(M)
    n1, v1 = force_approx(b, ij, ik, eps)
    n2, v2 = force_approx(b, il, im, eps)
    b.add_claim(Claim("approx", (ij, ik), value=djk, eps=eps, via=v1))
    b.add_claim(Claim("approx", (il, im), value=dlm, eps=eps, via=v2))
    b.add_claim(Claim(LESS_THAN, (ij, ik, il, im)))
    return b.finish(GadgetNode("less_than", {"eps": eps}, (n1, n2)))
