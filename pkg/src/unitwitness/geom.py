"""Exact n-dimensional geometric primitives over constructible coordinates.

Everything here is a pure function on immutable values.  Orientation
choices ("which of the two sphere intersection points") are explicit
`side` flags so constructions are reproducible.
"""

from __future__ import annotations

from .field import CN, FieldError, rational, ZERO, ONE


class GeometryError(ValueError):
    pass


class Point:
    """Fixed-dimension vector of constructible coordinates."""

    __slots__ = ("coords", "f")

    def __init__(self, coords):
        coords = tuple(c if isinstance(c, CN) else rational(c)
                       for c in coords)
        if len(coords) < 1:
            raise GeometryError("point needs at least one coordinate")
        self.coords = coords
        self.f = tuple(c.f for c in coords)

    @property
    def dim(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            return False
        return all(a == b for a, b in zip(self.coords, other.coords))

    __hash__ = None

    def __repr__(self):
        return "Point(%s)" % ", ".join("%.6g" % v for v in self.f)


class Hyperplane:
    """base point + nonzero normal vector."""

    __slots__ = ("base", "normal")

    def __init__(self, base, normal):
        normal = tuple(normal)
        if len(normal) != base.dim:
            raise GeometryError("normal dimension mismatch")
        if all(c.is_zero() for c in normal):
            raise GeometryError("zero normal")
        self.base = base
        self.normal = normal

    def contains(self, p):
        return dot(vsub(p.coords, self.base.coords), self.normal).is_zero()


class Frame:
    """Ordered list of pairwise-orthogonal unit vectors."""

    __slots__ = ("vectors",)

    def __init__(self, vectors):
        self.vectors = tuple(tuple(v) for v in vectors)

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def __iter__(self):
        return iter(self.vectors)


# -- vector helpers (tuples of CN) ------------------------------------------

def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(a, s):
    return tuple(x * s for x in a)


def dot(a, b):
    acc = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        acc = acc + x * y
    return acc


def norm_sq(a):
    return dot(a, a)


def dist_sq(p, q):
    """Exact squared distance."""
    if p.dim != q.dim:
        raise GeometryError("dimension mismatch")
    return norm_sq(vsub(p.coords, q.coords))


def translate(p, v):
    return Point(vadd(p.coords, v))


# -- frames ------------------------------------------------------------------

def _basis(dim, i):
    return tuple(ONE if j == i else ZERO for j in range(dim))


def householder_basis(u):
    """Orthonormal basis (u, f_2, ..., f_n) via the reflection taking e1 to u.

    u must be an exact unit vector.  Using a single Householder reflection
    keeps all basis coordinates inside the field generated by u's
    coordinates (no new square roots).
    """
    dim = len(u)
    v = vsub(_basis(dim, 0), u)
    vv = norm_sq(v)
    if vv.is_zero():
        cols = [_basis(dim, j) for j in range(dim)]
    else:
        cols = []
        for j in range(dim):
            e = _basis(dim, j)
            t = (v[j] + v[j]) / vv
            cols.append(vsub(e, vscale(v, t)))
    return cols[0], Frame(cols[1:])


def pair_frame(x, y, length):
    """Unit direction x->y plus an orthonormal frame of its complement.

    `length` must equal |x - y| exactly; passing it avoids a square root.
    """
    u = vscale(vsub(y.coords, x.coords), ONE / length)
    direction, frame = householder_basis(u)
    return direction, frame


# -- simplices ----------------------------------------------------------------

_CANONICAL_SIMPLEX = {}


def _canonical_simplex(n):
    """n vertices of a regular (n-1)-simplex, edge 1, centroid at origin,
    in coordinates R^(n-1)."""
    if n in _CANONICAL_SIMPLEX:
        return _CANONICAL_SIMPLEX[n]
    m = n - 1
    verts = [[ZERO] * m for _ in range(n)]
    for k in range(1, n):
        # vertex k sits over the centroid of the previous k vertices
        for j in range(k - 1):
            s = verts[0][j]
            for i in range(1, k):
                s = s + verts[i][j]
            verts[k][j] = s / rational(k)
        h = (rational(k + 1, 2 * k)).sqrt()
        verts[k][k - 1] = h
    centroid = [ZERO] * m
    for j in range(m):
        s = verts[0][j]
        for i in range(1, n):
            s = s + verts[i][j]
        centroid[j] = s / rational(n)
    out = tuple(tuple(verts[i][j] - centroid[j] for j in range(m))
                for i in range(n))
    _CANONICAL_SIMPLEX[n] = out
    return out


def simplex_circumradius_sq(n, edge):
    return edge * edge * rational(n - 1, 2 * n)


def regular_simplex(n, edge, center, frame):
    """n points at mutual distance `edge`, centroid `center`, spanning
    center + span(frame); frame must hold n-1 orthonormal vectors."""
    if len(frame) != n - 1:
        raise GeometryError("frame must span an (n-1)-subspace")
    if edge.sign() <= 0:
        raise GeometryError("edge must be positive")
    out = []
    for local in _canonical_simplex(n):
        v = center.coords
        for j in range(n - 1):
            v = vadd(v, vscale(frame[j], local[j] * edge))
        out.append(Point(v))
    return out


def simplex_apex(simplex, r, side=1):
    """The point at exact distance r from every vertex, on the chosen side
    of the simplex's affine hull."""
    n = len(simplex)
    dim = simplex[0].dim
    cen = simplex[0].coords
    for p in simplex[1:]:
        cen = vadd(cen, p.coords)
    cen = vscale(cen, rational(1, n))
    center = Point(cen)
    rho_sq = dist_sq(center, simplex[0])
    h_sq = r * r - rho_sq
    if h_sq.sign() < 0:
        raise GeometryError("apex radius below circumradius")
    normal = hull_normal(simplex)
    h = h_sq.sqrt()
    sgn = ONE if side >= 0 else -ONE
    return translate(center, vscale(normal, h * sgn))


def hull_normal(points):
    """Exact unit normal of the affine hull of `points` (which must span a
    hyperplane, i.e. dim-1 dimensions)."""
    dim = points[0].dim
    rows = [vsub(p.coords, points[0].coords) for p in points[1:]]
    kernel = nullspace(rows, dim)
    if len(kernel) != 1:
        raise GeometryError("points do not span a hyperplane")
    v = kernel[0]
    return vscale(v, ONE / norm_sq(v).sqrt())


def nullspace(rows, dim):
    """Basis of the exact right null space of the given row vectors."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(dim):
        pr = None
        for i in range(r, len(mat)):
            if not mat[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = ONE / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * dim
        v[fc] = ONE
        for ri, pc in enumerate(pivots):
            v[pc] = -mat[ri][fc]
        basis.append(tuple(v))
    return basis


def matrix_rank(rows, dim):
    return dim - len(nullspace(rows, dim))


# -- reflections and inversion -------------------------------------------------

def reflect(p, hyperplane):
    """Exact mirror image across the hyperplane."""
    d = vsub(p.coords, hyperplane.base.coords)
    n = hyperplane.normal
    t = (dot(d, n) + dot(d, n)) / norm_sq(n)
    return Point(vsub(p.coords, vscale(n, t)))


def mirror_between(x, y):
    """The hyperplane reflecting x into y (unique when x != y)."""
    d = vsub(y.coords, x.coords)
    if all(c.is_zero() for c in d):
        raise GeometryError("mirror between equal points is undefined")
    mid = Point(vadd(x.coords, vscale(d, rational(1, 2))))
    return Hyperplane(mid, d)


def invert(center, power, p):
    """Inversion through the sphere |q - center|^2 = power."""
    d = vsub(p.coords, center.coords)
    dd = norm_sq(d)
    if dd.is_zero():
        raise GeometryError("cannot invert the center")
    return Point(vadd(center.coords, vscale(d, power / dd)))


def project_onto(p, hyperplane):
    """Foot of the perpendicular from p to the hyperplane."""
    d = vsub(p.coords, hyperplane.base.coords)
    n = hyperplane.normal
    t = dot(d, n) / norm_sq(n)
    return Point(vsub(p.coords, vscale(n, t)))


# -- circle/sphere intersections ------------------------------------------------

def sphere_intersect_point(c1, r1, c2, r2, frame_hint, side=1):
    """A point at exact distances r1 from c1 and r2 from c2.

    Deterministic: lives in the plane spanned by c1->c2 and the first
    frame_hint vector not parallel to it; `side` picks the half-plane.
    """
    delta = vsub(c2.coords, c1.coords)
    dsq = norm_sq(delta)
    if dsq.is_zero():
        raise GeometryError("concentric spheres")
    t = (dsq + r1 * r1 - r2 * r2) / (dsq + dsq)
    h_sq = r1 * r1 - t * t * dsq
    if h_sq.sign() < 0:
        raise GeometryError("spheres do not intersect")
    w = None
    for cand in frame_hint:
        if not dot(cand, delta).is_zero():
            continue
        w = cand
        break
    if w is None:
        # orthogonalize the first hint against the axis; needs one sqrt
        cand = frame_hint[0]
        proj = dot(cand, delta) / dsq
        w0 = vsub(cand, vscale(delta, proj))
        ww = norm_sq(w0)
        if ww.is_zero():
            raise GeometryError("frame hint parallel to the axis")
        w = vscale(w0, ONE / ww.sqrt())
    h = h_sq.sqrt()
    sgn = ONE if side >= 0 else -ONE
    return Point(vadd(c1.coords, vadd(vscale(delta, t), vscale(w, h * sgn))))


def midpoint(x, y):
    return Point(vscale(vadd(x.coords, y.coords), rational(1, 2)))
