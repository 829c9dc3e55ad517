"""Witness-set constructors for forced distances.

Each constructor produces a finite point set whose unit edges force any
unit-distance-preserving map to preserve a target quantity: a scaled
distance, an integer multiple or fraction, a Pythagorean combination, a
difference/sum, a ratio, a square root, or an epsilon-approximation.  The
expression compiler composes them to realize any positive element of the
real quadratic closure of Q as a forced distance.

Internally every constructor is a *plan*: a recipe for a point cloud built
once in canonical pose (the target pair on the first axis) and then
instantiated anywhere by an exact reflection isometry, which adds no new
square roots and keeps coordinate towers shallow.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .field import (CN, FieldError, ONE, ZERO, join_towers, lift, parse_ast,
                    prune, rational)
from .geom import (GeometryError, Point, dist_sq, dot, midpoint, norm_sq,
                   pair_frame, regular_simplex, sphere_intersect_point,
                   translate, vadd, vscale, vsub)
from .witness import (APPROX, Builder, Claim, DISTINCT, EXACT_DISTANCE,
                      GadgetNode, UPPER_BOUND, WitnessSet)


class GadgetError(ValueError):
    pass


_TWO = rational(2)
_HALF = rational(1, 2)


# ---------------------------------------------------------------------------
# exact isometries: canonical pose -> builder pose
# ---------------------------------------------------------------------------

def _basis(dim, i):
    return tuple(ONE if j == i else ZERO for j in range(dim))


def _iso_from_pair(x, y, length):
    """Map taking the canonical pose (origin, length*e1) to (x, y).

    A single reflection (Householder) followed by a translation; both are
    exact and introduce no new radicands.
    """
    dim = x.dim
    u = vscale(vsub(y.coords, x.coords), ONE / length)
    v = vsub(_basis(dim, 0), u)
    vv = norm_sq(v)
    xc = x.coords
    if vv.is_zero():
        def apply(p):
            return Point(vadd(p.coords, xc))
        return apply
    scale = _TWO / vv

    def apply(p):
        t = dot(v, p.coords) * scale
        return Point(tuple(pc - vc * t + c
                           for pc, vc, c in zip(p.coords, v, xc)))
    return apply


# ---------------------------------------------------------------------------
# plans
# ---------------------------------------------------------------------------

_PLANS = {}


def _intern(plan):
    return _PLANS.setdefault((plan.dim, plan.key), plan)


class Plan:
    """A reusable recipe forcing |x-y| = self.value.

    The cloud is computed once in canonical pose; `build` instantiates it
    between two existing builder points at exactly that distance.
    """

    tag = None

    def __init__(self, dim, key, value):
        self.dim = dim
        self.key = key
        self.value = prune(value)
        self._cloud = None
        self._cloud_towers = None
        self._lift_cache = {}

    def params(self):
        return {}

    def _place(self, b, i, j):
        raise NotImplementedError

    def cloud(self):
        if self._cloud is None:
            dim = self.dim
            b = Builder(dim)
            i = b.add_point(Point((ZERO,) * dim))
            j = b.add_point(Point((self.value,) + (ZERO,) * (dim - 1)))
            children = self._place(b, i, j)
            node = GadgetNode(self.tag, self.params(), children)
            towers = []
            for p in b.points:
                t = p.coords[0].tower
                for c in p.coords[1:]:
                    t = join_towers(t, c.tower)
                towers.append(t)
            self._cloud = (b.points, sorted(b._edges), node)
            self._cloud_towers = towers
        return self._cloud

    def build(self, b, i, j, want_map=False):
        memo_key = (id(self), i, j)
        if not want_map:
            hit = b.memo.get(memo_key)
            if hit is not None:
                return hit
        points, edges, node = self.cloud()
        x, y = b.points[i], b.points[j]
        # frame tower: just enough for the endpoints and the pair length
        tf = self.value.tower
        for c in x.coords:
            tf = join_towers(tf, c.tower)
        for c in y.coords:
            tf = join_towers(tf, c.tower)
        length = lift(self.value, tf)
        xc = tuple(lift(c, tf) for c in x.coords)
        yc = tuple(lift(c, tf) for c in y.coords)
        u = vscale(vsub(yc, xc), ONE / length)
        v = vsub(_basis(self.dim, 0), u)
        vv = norm_sq(v)
        scale = None if vv.is_zero() else _TWO / vv
        # lift each cloud point only into (frame tower) join (its own tower),
        # never into a union over the whole cloud
        frame_cache = {}
        imap = {0: i, 1: j}
        for t in range(2, len(points)):
            # point tower first: the point's lift is then a pure padding,
            # and the frame's (cached) lift pays the embedding once per tower
            tw = join_towers(self._cloud_towers[t], tf)
            fr = frame_cache.get(tw)
            if fr is None:
                if scale is None:
                    fr = (None, None, tuple(lift(c, tw) for c in xc))
                else:
                    fr = (tuple(lift(c, tw) for c in v), lift(scale, tw),
                          tuple(lift(c, tw) for c in xc))
                frame_cache[tw] = fr
            vl, sl, xl = fr
            pl = self._lift_cache.get((t, tw))
            if pl is None:
                pl = tuple(lift(c, tw) for c in points[t].coords)
                self._lift_cache[(t, tw)] = pl
            if vl is None:
                q = Point(tuple(pc + c for pc, c in zip(pl, xl)))
            else:
                tval = dot(vl, pl) * sl
                q = Point(tuple(pc - vc * tval + c
                                for pc, vc, c in zip(pl, vl, xl)))
            imap[t] = b.add_point(q)
        for (a, c) in edges:
            b.add_edge(imap[a], imap[c])
        b.memo[memo_key] = node
        if want_map:
            return node, imap
        return node


class UnitPlan(Plan):
    tag = "unit"

    def __init__(self, dim):
        super().__init__(dim, ("unit",), ONE)

    def _place(self, b, i, j):
        b.add_edge(i, j)
        return ()


class ScalePlan(Plan):
    """|x-y| = sqrt(2+2/n) * d via a bipyramid over a regular simplex."""

    tag = "Fig1"

    def __init__(self, sub):
        d = sub.value
        c = rational(2) + rational(2, sub.dim)
        value = (c * d * d).sqrt()
        super().__init__(sub.dim, ("scale", sub.key), value)
        self.sub = sub

    def params(self):
        return {"d": self.sub.value}

    def _place(self, b, i, j):
        n = self.dim
        d = self.sub.value
        x, y = b.points[i], b.points[j]
        u, frame = pair_frame(x, y, self.value)
        z = midpoint(x, y)
        skeleton = [i, j]
        for p in regular_simplex(n, d, z, frame):
            skeleton.append(b.add_point(p))
        y2 = sphere_intersect_point(x, self.value, y, d, frame, +1)
        j2 = b.add_point(y2)
        skeleton.append(j2)
        u2, frame2 = pair_frame(x, y2, self.value)
        z2 = midpoint(x, y2)
        for p in regular_simplex(n, d, z2, frame2):
            skeleton.append(b.add_point(p))
        dd = d * d
        children = []
        for a in range(len(skeleton)):
            for c in range(a + 1, len(skeleton)):
                ia, ic = skeleton[a], skeleton[c]
                if (dist_sq(b.points[ia], b.points[ic]) - dd).is_zero():
                    children.append(self.sub.build(b, ia, ic))
        return children


class BoundPlan(Plan):
    """Forces |f(x)-f(y)| <= (2/n) * d; trivial in the plane."""

    tag = "Fig2"

    def __init__(self, sub):
        value = rational(2, sub.dim) * sub.value
        super().__init__(sub.dim, ("bound", sub.key), value)
        self.sub = sub

    def params(self):
        return {"d": self.sub.value}

    def _place(self, b, i, j):
        n = self.dim
        if n == 2:
            return ()
        d = self.sub.value
        x, y = b.points[i], b.points[j]
        u, frame = pair_frame(x, y, self.value)
        z = midpoint(x, y)
        edge_plan = _intern(ScalePlan(self.sub))
        simplex = [b.add_point(p)
                   for p in regular_simplex(n, edge_plan.value, z, frame)]
        children = []
        for a in range(n):
            for c in range(a + 1, n):
                children.append(edge_plan.build(b, simplex[a], simplex[c]))
        for idx in simplex:
            children.append(self.sub.build(b, i, idx))
            children.append(self.sub.build(b, j, idx))
        return children


class DoublePlan(Plan):
    """|x-y| = 2d: midpoint chain plus a collinearity-forcing outer point."""

    tag = "Fig3"

    def __init__(self, sub):
        super().__init__(sub.dim, ("double", sub.key), _TWO * sub.value)
        self.sub = sub

    def params(self):
        return {"d": self.sub.value}

    def _place(self, b, i, j):
        n = self.dim
        x, y = b.points[i], b.points[j]
        s = b.add_point(midpoint(x, y))
        # t beyond y: |y-t| = (2/n) d and |x-t| = (2+2/n) d, so the triangle
        # inequality pins |f(x)-f(y)| from above while s pins it from below.
        lam = ONE + rational(1, n)  # (1 + 1/n) of the x->y vector
        t = b.add_point(translate(x, vscale(vsub(y.coords, x.coords), lam)))
        c1 = self.sub.build(b, i, s)
        c2 = self.sub.build(b, s, j)
        cz = _intern(BoundPlan(self.sub)).build(b, j, t)
        far = _intern(ScalePlan(_intern(ScalePlan(self.sub))))
        cx = far.build(b, i, t)
        return (c1, c2, cz, cx)


class TimesPlan(Plan):
    """|x-y| = k*d: collinear chain with every step and double-step forced."""

    tag = "Fig4"

    def __init__(self, k, sub):
        super().__init__(sub.dim, ("times", k, sub.key),
                         rational(k) * sub.value)
        self.k = k
        self.sub = sub

    def params(self):
        return {"k": self.k, "d": self.sub.value}

    def _place(self, b, i, j):
        k = self.k
        x, y = b.points[i], b.points[j]
        w = [i]
        delta = vsub(y.coords, x.coords)
        for t in range(1, k):
            w.append(b.add_point(
                translate(x, vscale(delta, rational(t, k)))))
        w.append(j)
        children = [self.sub.build(b, w[t], w[t + 1]) for t in range(k)]
        doubler = _intern(DoublePlan(self.sub))
        for t in range(k - 1):
            children.append(doubler.build(b, w[t], w[t + 2]))
        return children


class DividePlan(Plan):
    """|x-y| = d/k via similar isoceles triangles with integer legs."""

    tag = "Fig5"

    def __init__(self, k, sub):
        super().__init__(sub.dim, ("divide", k, sub.key),
                         sub.value / rational(k))
        self.k = k
        d = sub.value
        m = 1
        while rational(2 * k * m) <= d:
            m += 1
        self.m = m
        self.sub = sub

    def params(self):
        return {"k": self.k, "m": self.m, "d": self.sub.value}

    def _place(self, b, i, j):
        k, m = self.k, self.m
        x, y = b.points[i], b.points[j]
        u, frame = pair_frame(x, y, self.value)
        mc = rational(m)
        z = sphere_intersect_point(x, mc, y, mc, frame, +1)
        kc = rational(k)
        x2 = translate(z, vscale(vsub(x.coords, z.coords), kc))
        y2 = translate(z, vscale(vsub(y.coords, z.coords), kc))
        iz = b.add_point(z)
        ix2 = b.add_point(x2)
        iy2 = b.add_point(y2)
        dim = self.dim
        leg = _int_plan(m, dim)
        big_leg = _int_plan(k * m, dim)
        gap = _int_plan((k - 1) * m, dim)
        return (self.sub.build(b, ix2, iy2),
                gap.build(b, ix2, i),
                leg.build(b, i, iz),
                big_leg.build(b, ix2, iz),
                gap.build(b, iy2, j),
                leg.build(b, j, iz),
                big_leg.build(b, iy2, iz))


class PythPlan(Plan):
    """|x-y| = sqrt(a^2 - b^2) by the median identity of an isoceles triangle."""

    tag = "Fig7"

    def __init__(self, pa, pb):
        a, c = pa.value, pb.value
        value = (a * a - c * c).sqrt()
        if value.sign() <= 0:
            raise GadgetError("needs a > b > 0")
        super().__init__(pa.dim, ("pyth", pa.key, pb.key), value)
        self.pa = pa
        self.pb = pb

    def params(self):
        return {"a": self.pa.value, "b": self.pb.value}

    def _place(self, b, i, j):
        x, y = b.points[i], b.points[j]
        u, frame = pair_frame(x, y, self.value)
        w = frame[0]
        bv = self.pb.value
        s = b.add_point(translate(x, vscale(w, -bv)))
        t = b.add_point(translate(x, vscale(w, bv)))
        doubled = _plan_times(2, self.pb)
        return (self.pb.build(b, s, i),
                self.pb.build(b, i, t),
                doubled.build(b, s, t),
                self.pa.build(b, s, j),
                self.pa.build(b, t, j))


class DiffPlan(Plan):
    """|x-y| in {a - b, a + b}: a rigid simplex centred at distance a from x
    on the axis leaves exactly those two placements for y; an approximation
    chain with tolerance under the 2b branch gap pins the requested one."""

    tag = "Fig8"

    def __init__(self, pa, pb, mode="diff"):
        if mode == "diff":
            value = pa.value - pb.value
            if value.sign() <= 0:
                raise GadgetError("needs a > b > 0")
        else:
            if (pa.value - pb.value).sign() < 0:
                pa, pb = pb, pa
            value = pa.value + pb.value
        super().__init__(pa.dim, (mode, pa.key, pb.key), value)
        self.pa = pa
        self.pb = pb
        self.mode = mode

    def params(self):
        return {"a": self.pa.value, "b": self.pb.value, "mode": self.mode}

    def _place(self, b, i, j):
        n = self.dim
        x, y = b.points[i], b.points[j]
        u, frame = pair_frame(x, y, self.value)
        z = translate(x, vscale(u, self.pa.value))
        # any circumradius keeps the argument; pick one whose leg lengths
        # are cheap square roots
        rr = _choose_radius_sq((self.pa.value, self.pb.value), n)
        rr_cn = rational(rr.numerator, rr.denominator)
        edge_sq = rr_cn * rational(2 * n, n - 1)
        edge_plan = _plan_sqrt_value(edge_sq, n)
        simplex = [b.add_point(p)
                   for p in regular_simplex(n, edge_plan.value,
                                            Point(z.coords), frame)]
        leg_x = _plan_sqrt_value(self.pa.value * self.pa.value + rr_cn, n)
        leg_y = _plan_sqrt_value(self.pb.value * self.pb.value + rr_cn, n)
        children = []
        for a in range(n):
            for c in range(a + 1, n):
                children.append(edge_plan.build(b, simplex[a], simplex[c]))
        for idx in simplex:
            children.append(leg_x.build(b, i, idx))
            children.append(leg_y.build(b, j, idx))
        # tolerance 2b separates the two branches: the chain keeps
        # |f(x)-f(y)| within (9/8)b of the target, and the wrong branch
        # lies a full 2b away
        chain = _intern(ApproxPlan(self.value, _TWO * self.pb.value, n))
        children.append(chain.build(b, i, j))
        return tuple(children)


class RatioPlan(Plan):
    """|A-B| = a*b/c via two similar isoceles triangles from a shared apex."""

    tag = "Fig9"

    def __init__(self, pa, pb, pc):
        a, bv, c = pa.value, pb.value, pc.value
        value = a * bv / c
        dim = pa.dim
        m = 1
        big, small = (a, c) if a > c else (c, a)
        while not (bv < rational(2 * m) * c
                   and bv * big / c < rational(2 * m) * small):
            m += 1
        super().__init__(dim, ("ratio", pa.key, pb.key, pc.key), value)
        self.pa, self.pb, self.pc = pa, pb, pc
        self.m = m

    def params(self):
        return {"a": self.pa.value, "b": self.pb.value,
                "c": self.pc.value, "m": self.m}

    def _place(self, b, i, j):
        a, c = self.pa.value, self.pc.value
        m = rational(self.m)
        A, B = b.points[i], b.points[j]
        u, frame = pair_frame(A, B, self.value)
        O = sphere_intersect_point(A, m * a, B, m * a, frame, +1)
        r = c / a
        A2 = translate(O, vscale(vsub(A.coords, O.coords), r))
        B2 = translate(O, vscale(vsub(B.coords, O.coords), r))
        io = b.add_point(O)
        ia2 = b.add_point(A2)
        ib2 = b.add_point(B2)
        leg_a = _plan_times(self.m, self.pa)
        leg_c = _plan_times(self.m, self.pc)
        children = [leg_a.build(b, io, i),
                    leg_a.build(b, io, j),
                    leg_c.build(b, io, ia2),
                    leg_c.build(b, io, ib2),
                    self.pb.build(b, ia2, ib2)]
        if not (a - c).is_zero():
            hi, lo = (self.pa, self.pc) if a > c else (self.pc, self.pa)
            gap = _plan_times(self.m, _plan_sub(hi, lo))
            children.append(gap.build(b, i, ia2))
            children.append(gap.build(b, j, ib2))
        return tuple(children)


class ApproxPlan(Plan):
    """Two rational legs through a hinge point z: forces
    ||f(x)-f(y)| - |x-y|| <= eps for any unit-preserving f."""

    tag = "Fig6/T"

    def __init__(self, value, eps, dim):
        if eps.sign() <= 0:
            raise GadgetError("approximation tolerance must be positive")
        if value.sign() <= 0:
            raise GadgetError("approximation needs distinct endpoints")
        key = ("approx", value.to_expr(), eps.to_expr())
        super().__init__(dim, key, value)
        self.eps = eps
        q, r = _rational_legs(value, eps)
        self.q = q
        self.r = r
        self.hinge_local = 2  # index of z in the canonical cloud

    def params(self):
        return {"q": self.q, "r": self.r, "eps": self.eps}

    def _place(self, b, i, j):
        x, y = b.points[i], b.points[j]
        u, frame = pair_frame(x, y, self.value)
        qc = rational(self.q.numerator, self.q.denominator)
        rc = rational(self.r.numerator, self.r.denominator)
        z = b.add_point(sphere_intersect_point(x, qc, y, rc, frame, +1))
        dim = self.dim
        return (_rational_plan(self.q, dim).build(b, i, z),
                _rational_plan(self.r, dim).build(b, z, j))


class WrapPlan(Plan):
    """Re-tags an inner plan's derivation (e.g. a square-root composition)."""

    def __init__(self, tag, params, inner, key):
        super().__init__(inner.dim, key, inner.value)
        self.tag = tag
        self._params = dict(params)
        self.inner = inner

    def params(self):
        return dict(self._params)

    def _place(self, b, i, j):
        return (self.inner.build(b, i, j),)


# ---------------------------------------------------------------------------
# plan algebra
# ---------------------------------------------------------------------------

def _unit_plan(dim):
    return _intern(UnitPlan(dim))


def _int_plan(k, dim):
    if k <= 0:
        raise GadgetError("integer distance must be positive")
    if k == 1:
        return _unit_plan(dim)
    return _intern(TimesPlan(k, _unit_plan(dim)))


def _rational_plan(f, dim):
    f = Fraction(f)
    if f <= 0:
        raise GadgetError("rational distance must be positive")
    if f.denominator == 1:
        return _int_plan(f.numerator, dim)
    return _intern(DividePlan(f.denominator, _int_plan(f.numerator, dim)))


def _radius_plan(n):
    # sqrt(1 - 1/n^2) = sqrt(n^2 - 1) / n, and sqrt(n^2-1) is Pythagorean.
    root = _intern(PythPlan(_int_plan(n, n), _unit_plan(n)))
    return _intern(DividePlan(n, root))


# Values currently being lowered; a re-entry means the expression of a
# product re-lowers to the same product, so we fall back to sqrt(v^2).
_PLAN_GUARD = set()


def _plan_divide(k, sub):
    if k == 1:
        return sub
    return _intern(DividePlan(k, sub))


def _best_diff_of_squares(N):
    """(x, y) with x^2 - y^2 = N minimizing the chain cost x + 3y."""
    best = None
    e = 1
    while e * e <= N:
        if N % e == 0:
            d = N // e
            if (d - e) % 2 == 0:
                x, y = (d + e) // 2, (d - e) // 2
                if best is None or x + 3 * y < best[0] + 3 * best[1]:
                    best = (x, y)
        e += 1
    return best


def _sqrt_int_plan(N, dim):
    """A plan for sqrt(N), N a positive integer."""
    r = isqrt(N)
    if r * r == N:
        return _int_plan(r, dim)
    if N % 4 == 2:
        return _plan_divide(2, _sqrt_int_plan(4 * N, dim))
    x, y = _best_diff_of_squares(N)
    return _intern(PythPlan(_int_plan(x, dim), _int_plan(y, dim)))


@lru_cache(maxsize=None)
def _sqrt_cost(f):
    """Rough chain-length cost of realizing sqrt(f), f a positive rational."""
    N = f.numerator * f.denominator
    r = isqrt(N)
    if r * r == N:
        return Fraction(r, f.denominator).numerator
    if N % 4 == 2:
        N *= 4
    x, y = _best_diff_of_squares(N)
    return x + 3 * y


def _choose_radius_sq(values, n):
    """Squared circumradius for a difference gadget's simplex: positive
    rational chosen to make the legs sqrt(v^2 + r) cheap to realize."""
    base = Fraction(n * n - 1, n * n)
    cands = {base}
    for k in range(2, 9):
        cands.add(base * k * k)
    sqs = []
    for v in values:
        s = (v * v).as_rational()
        sqs.append(Fraction(s) if s is not None else None)
    for s in sqs:
        if s is None:
            continue
        c0 = isqrt(int(s)) + 1
        for dlt in range(3):
            r = Fraction(c0 + dlt) ** 2 - s
            if r > 0 and r.denominator <= 64:
                cands.add(r)
    best = None
    for r in sorted(cands):
        cost = _sqrt_cost(r * Fraction(2 * n, n - 1))
        for s in sqs:
            if s is not None:
                cost += _sqrt_cost(s + r)
        if best is None or cost < best[0]:
            best = (cost, r)
    return best[1]


def _sqrt_rational_plan(f, dim):
    """A plan for sqrt(p/q) = sqrt(p*q) / q."""
    f = Fraction(f)
    if f <= 0:
        raise GadgetError("square root argument must be positive")
    return _plan_divide(f.denominator,
                        _sqrt_int_plan(f.numerator * f.denominator, dim))


_FOUR = rational(4)


def _plan_sqrt_value(w, dim):
    """A plan for sqrt(w), w any positive constructible value.

    Rescales w into (1,4) by powers of 4, then uses the median identity
    2*sqrt(w') = sqrt((w'+1)^2 - (w'-1)^2).
    """
    if w.sign() <= 0:
        raise GadgetError("square root argument must be positive")
    v = w.sqrt()
    rat = v.as_rational()
    if rat is not None:
        return _rational_plan(Fraction(rat), dim)
    wr = w.as_rational()
    if wr is not None:
        return _sqrt_rational_plan(Fraction(wr), dim)
    e = 0
    wp = w
    while (wp - ONE).sign() <= 0:
        wp = wp * _FOUR
        e += 1
    while (wp - _FOUR).sign() > 0:
        wp = wp / _FOUR
        e -= 1
    pyth = _intern(PythPlan(plan_for_value(wp + ONE, dim),
                            plan_for_value(wp - ONE, dim)))
    # pyth.value = 2*sqrt(wp) and sqrt(w) = 2^(-e) * sqrt(wp)
    if e >= -1:
        return _plan_divide(2 ** (e + 1), pyth)
    return _intern(RatioPlan(_int_plan(2 ** (-e - 1), dim), pyth,
                             _unit_plan(dim)))


def _plan_times(k, sub):
    if k <= 0:
        raise GadgetError("multiplier must be a positive integer")
    if k == 1:
        return sub
    return plan_for_value(rational(k) * sub.value, sub.dim)


def _plan_add(pa, pb):
    v = pa.value + pb.value
    dim = pa.dim
    rat = v.as_rational()
    if rat is not None:
        return _rational_plan(Fraction(rat), dim)
    sq = (v * v).as_rational()
    if sq is not None:
        return _sqrt_rational_plan(Fraction(sq), dim)
    if (pa.value - pb.value).is_zero():
        return _plan_times(2, pa)
    return _intern(DiffPlan(pa, pb, "sum"))


def _plan_sub(pa, pb):
    v = pa.value - pb.value
    if v.sign() <= 0:
        raise GadgetError("difference must be positive")
    dim = pa.dim
    rat = v.as_rational()
    if rat is not None:
        return _rational_plan(Fraction(rat), dim)
    sq = (v * v).as_rational()
    if sq is not None:
        return _sqrt_rational_plan(Fraction(sq), dim)
    return _intern(DiffPlan(pa, pb))


def _plan_mul(pa, pb):
    v = pa.value * pb.value
    dim = pa.dim
    rat = v.as_rational()
    if rat is not None:
        return _rational_plan(Fraction(rat), dim)
    sq = (v * v).as_rational()
    if sq is not None:
        return _sqrt_rational_plan(Fraction(sq), dim)
    ra, rb = pa.value.as_rational(), pb.value.as_rational()
    if ra is not None:
        return _scale_by_rational(Fraction(ra), pb)
    if rb is not None:
        return _scale_by_rational(Fraction(rb), pa)
    return _intern(RatioPlan(pa, pb, _unit_plan(dim)))


def _plan_div(pa, pb):
    v = pa.value / pb.value
    dim = pa.dim
    rat = v.as_rational()
    if rat is not None:
        return _rational_plan(Fraction(rat), dim)
    sq = (v * v).as_rational()
    if sq is not None:
        return _sqrt_rational_plan(Fraction(sq), dim)
    ra, rb = pa.value.as_rational(), pb.value.as_rational()
    if rb is not None:
        return _scale_by_rational(1 / Fraction(rb), pa)
    if ra is not None:
        # (p/q) / w  =  1 * (p/q) / w
        return _intern(RatioPlan(_unit_plan(dim), pa, pb))
    return _intern(RatioPlan(pa, _unit_plan(dim), pb))


def _scale_by_rational(f, plan):
    f = Fraction(f)
    if f <= 0:
        raise GadgetError("scale factor must be positive")
    return _plan_divide(f.denominator, _plan_times(f.numerator, plan))


def _plan_sqrt(pa):
    a = pa.value
    inner = _plan_sqrt_value(a, pa.dim)
    return _intern(WrapPlan("sqrt", {"a": a}, inner, ("sqrt", pa.key)))


# ---------------------------------------------------------------------------
# expression lowering
# ---------------------------------------------------------------------------

def _lower(node, dim):
    """AST -> (plan realizing |value|, sign of value); sign 0 means zero."""
    if node.op == "int":
        if node.value == 0:
            return None, 0
        return _int_plan(abs(node.value), dim), (1 if node.value > 0 else -1)
    if node.op == "sqrt":
        plan, s = _lower(node.args[0], dim)
        if s < 0:
            raise GadgetError("square root of a negative quantity")
        if s == 0:
            return None, 0
        return _plan_sqrt(plan), 1
    pa, sa = _lower(node.args[0], dim)
    if node.op in ("add", "sub"):
        pb, sb = _lower(node.args[1], dim)
        if node.op == "sub":
            sb = -sb
        if sa == 0:
            return pb, sb
        if sb == 0:
            return pa, sa
        if sa == sb:
            return _plan_add(pa, pb), sa
        if (pa.value - pb.value).is_zero():
            return None, 0
        if pa.value > pb.value:
            return _plan_sub(pa, pb), sa
        return _plan_sub(pb, pa), sb
    if node.op in ("mul", "div"):
        pb, sb = _lower(node.args[1], dim)
        if node.op == "div" and sb == 0:
            raise GadgetError("division by zero in distance expression")
        if sa == 0:
            return None, 0
        combine = _plan_mul if node.op == "mul" else _plan_div
        return combine(pa, pb), sa * sb
    raise GadgetError("unknown expression node %r" % node.op)


def plan_for_value(d, dim):
    """A plan realizing an arbitrary positive constructible distance."""
    if d.sign() <= 0:
        raise GadgetError("distance must be positive")
    rat = d.as_rational()
    if rat is not None:
        return _rational_plan(Fraction(rat), dim)
    sq = (d * d).as_rational()
    if sq is not None:
        return _sqrt_rational_plan(Fraction(sq), dim)
    expr = d.to_expr()
    key = (dim, expr)
    if key in _PLAN_GUARD:
        return _plan_sqrt_value(d * d, dim)
    _PLAN_GUARD.add(key)
    try:
        plan, s = _lower(parse_ast(expr), dim)
    finally:
        _PLAN_GUARD.discard(key)
    if s <= 0 or not (plan.value - d).is_zero():
        raise GadgetError("could not lower %s to a gadget plan" % expr)
    return plan


# ---------------------------------------------------------------------------
# rational legs for the approximation chain
# ---------------------------------------------------------------------------

def _simplest_between(lo, hi):
    """The smallest-denominator fraction in [lo, hi] (0 < lo <= hi)."""
    fl = lo.numerator // lo.denominator
    if lo <= fl:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    return fl + 1 / _simplest_between(1 / (hi - fl), 1 / (lo - fl))


def _rational_legs(value, eps):
    """(q, r): rationals with |value - q| <= r and r <= eps/2, r a power
    of 1/2 and q the simplest fraction that close to the value."""
    r = Fraction(1)
    half_eps = eps * _HALF
    # r <= eps/2 for the tolerance, r <= value so the hinge triangle exists
    while (rational(r.numerator, r.denominator) > half_eps
           or rational(r.numerator, r.denominator) > value):
        r /= 2
    rat = value.as_rational()
    if rat is not None:
        return Fraction(rat), r
    # the hinge triangle tolerates |value - q| <= r; a decimal approximation
    # with error at most r/8 keeps [apx-5r/8, apx+5r/8] inside that band,
    # and the widest band admits the simplest leg
    digits = len(str(8 * r.denominator))
    apx = Fraction(value.approx(digits))
    q = _simplest_between(apx - 5 * r / 8, apx + 5 * r / 8)
    qc = rational(q.numerator, q.denominator)
    rc = rational(r.numerator, r.denominator)
    if q <= 0 or ((value - qc) * (value - qc) - rc * rc).sign() > 0:
        raise GadgetError("internal: leg selection out of tolerance")
    return q, r


# ---------------------------------------------------------------------------
# public constructors
# ---------------------------------------------------------------------------

def _start(x, y):
    if x.dim != y.dim:
        raise GadgetError("dimension mismatch")
    b = Builder(x.dim)
    i = b.add_point(x)
    j = b.add_point(y)
    if i == j:
        raise GadgetError("endpoints must be distinct")
    return b, i, j


def _require_distance(x, y, value):
    if not (dist_sq(x, y) - value * value).is_zero():
        raise GadgetError("endpoints are not at the required distance %s"
                          % value.to_expr())


def _realize(plan, x, y, claim_kind=EXACT_DISTANCE, eps=None):
    b, i, j = _start(x, y)
    _require_distance(x, y, plan.value)
    node = plan.build(b, i, j)
    b.add_claim(Claim(claim_kind, (i, j), value=plan.value, eps=eps))
    return b.finish(node)


def unit_pair(x, y):
    return _realize(_unit_plan(x.dim), x, y)


def scale_up(x, y, d):
    """Forces |x-y| = sqrt(2+2/n) * d."""
    return _realize(_intern(ScalePlan(plan_for_value(d, x.dim))), x, y)


def bound_gadget(x, y, d):
    """Forces |f(x)-f(y)| <= (2/n) * d."""
    plan = _intern(BoundPlan(plan_for_value(d, x.dim)))
    return _realize(plan, x, y, claim_kind=UPPER_BOUND)


def double(x, y, d):
    return _realize(_intern(DoublePlan(plan_for_value(d, x.dim))), x, y)


def multiple(x, y, d, k):
    if k <= 0:
        raise GadgetError("multiplier must be a positive integer")
    return _realize(_plan_times(k, plan_for_value(d, x.dim)), x, y)


def divide(x, y, d, k):
    if k <= 0:
        raise GadgetError("divisor must be a positive integer")
    return _realize(_plan_divide(k, plan_for_value(d, x.dim)), x, y)


def pyth_diff(x, y, a, b):
    dim = x.dim
    plan = _intern(PythPlan(plan_for_value(a, dim), plan_for_value(b, dim)))
    return _realize(plan, x, y)


def diff_sum(x, y, a, b, mode="diff"):
    dim = x.dim
    if mode not in ("diff", "sum"):
        raise GadgetError("mode must be 'diff' or 'sum'")
    if a <= b:
        raise GadgetError("needs a > b > 0")
    pa, pb = plan_for_value(a, dim), plan_for_value(b, dim)
    return _realize(_intern(DiffPlan(pa, pb, mode)), x, y)


def ratio(A, B, a, b, c):
    dim = A.dim
    plan = _intern(RatioPlan(plan_for_value(a, dim), plan_for_value(b, dim),
                             plan_for_value(c, dim)))
    return _realize(plan, A, B)


def sqrt_gadget(x, y, a):
    return _realize(_plan_sqrt(plan_for_value(a, x.dim)), x, y)


def approx_gadget(x, y, eps, extra_claims=()):
    """Forces ||f(x)-f(y)| - |x-y|| <= eps (two rational legs)."""
    b, i, j = _start(x, y)
    value = dist_sq(x, y).sqrt()
    plan = _intern(ApproxPlan(value, eps, x.dim))
    node, imap = plan.build(b, i, j, want_map=True)
    via = imap[plan.hinge_local]
    b.add_claim(Claim(APPROX, (i, j), value=value, eps=eps, via=via))
    for kind in extra_claims:
        b.add_claim(Claim(kind, (i, j)))
    return b.finish(node)


def force_distance(b, i, j, value=None):
    """Forces the distance between two existing builder points.

    Returns the derivation node; `value` defaults to the exact distance,
    which must be positive."""
    if value is None:
        value = dist_sq(b.points[i], b.points[j]).sqrt()
    plan = plan_for_value(value, b.dim)
    _require_distance(b.points[i], b.points[j], plan.value)
    return plan.build(b, i, j)


def force_approx(b, i, j, eps):
    """Builds an approximation chain between two existing builder points.

    Returns (derivation node, index of the hinge point certifying the
    two rational legs)."""
    value = dist_sq(b.points[i], b.points[j]).sqrt()
    plan = _intern(ApproxPlan(value, eps, b.dim))
    node, imap = plan.build(b, i, j, want_map=True)
    return node, imap[plan.hinge_local]


def compile_expr(expr, n, anchor=None, direction=None):
    """Realizes the value of a distance expression as a forced distance."""
    if n < 2:
        raise GadgetError("dimension must be at least 2")
    ast = parse_ast(expr)
    plan, s = _lower(ast, n)
    if s <= 0:
        raise GadgetError("expression must evaluate to a positive distance")
    v = plan.value
    if anchor is None:
        anchor = Point((ZERO,) * n)
    if anchor.dim != n:
        raise GadgetError("anchor dimension mismatch")
    if direction is None:
        dvec = _basis(n, 0)
    else:
        dvec = tuple(direction)
        if len(dvec) != n or not (norm_sq(dvec) - ONE).is_zero():
            raise GadgetError("direction must be an exact unit vector")
    y = translate(anchor, vscale(dvec, v))
    b = Builder(n)
    i = b.add_point(anchor)
    j = b.add_point(y)
    inner = plan.build(b, i, j)
    node = GadgetNode("compile", {"expr": expr}, (inner,))
    b.add_claim(Claim(EXACT_DISTANCE, (i, j), value=v))
    return b.finish(node)
