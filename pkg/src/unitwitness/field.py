"""Exact arithmetic over the real quadratic closure of Q.

Numbers are represented over a *tower* of real quadratic extensions
Q = K_0 < K_1 = K_0(sqrt(r_1)) < ... < K_m, where each radicand r_i is a
nonnegative element of K_{i-1} that is not a square there.  K_m is a
Q-vector space with basis {prod_{i in S} sqrt(r_i) : S subset of levels},
so an element is stored sparsely as a dict mapping the bitmask of S to its
nonzero rational coefficient.  Because every radicand is a non-square at
its level this representation is canonical per tower, so equality and the
zero test are purely structural.  Signs of nonzero values are decided by
interval refinement (the interval precision doubles until zero is
excluded); the zero case never reaches the numeric path.
"""

from __future__ import annotations

import math
import re

import mpmath

try:  # gmpy2 rationals are much faster; Fraction is a drop-in fallback
    from gmpy2 import mpq as _Q, mpz as _Z
    from gmpy2 import isqrt as _isqrt

    def _mkq(p, q=1):
        return _Q(p, q)
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Q
    from math import isqrt as _isqrt

    def _Z(x):
        return int(x)

    def _mkq(p, q=1):
        return _Q(p, q)

_Q0 = _mkq(0)
_Q1 = _mkq(1)
_QH = _mkq(1, 2)


class FieldError(ValueError):
    """Domain error: division by zero, sqrt of a negative, bad parse."""


# ---------------------------------------------------------------------------
# representation-level arithmetic
#
# A "rep" is a dict {mask: coefficient} over a tower of depth d: bit i of a
# mask selects sqrt(r_i), masks fit in d bits, and coefficients are nonzero
# rationals (the empty dict is zero).  `rads` below is always the list of
# the governing tower's radicand reps (`Tower.rdicts`); the radicand at
# level i only uses bits below i, which grounds every recursion here.
# ---------------------------------------------------------------------------


def _from_q(q):
    return {0: q} if q else {}


def _is_zero(rep):
    return not rep


def _acc(out, m, c):
    v = out.get(m)
    if v is None:
        out[m] = c
    else:
        v = v + c
        if v:
            out[m] = v
        else:
            del out[m]


def _add(a, b):
    if not b:
        return a
    if not a:
        return b
    out = dict(a)
    for m, c in b.items():
        _acc(out, m, c)
    return out


def _sub(a, b):
    if not b:
        return a
    if not a:
        return _neg(b)
    out = dict(a)
    for m, c in b.items():
        _acc(out, m, -c)
    return out


def _neg(a):
    return {m: -c for m, c in a.items()}


_BPROD = {}


class _Rads(list):
    """Radicand reps of a tower; `monos` holds (mask, coeff) pairs when
    every radicand is a single monomial, enabling the fast fold below."""

    __slots__ = ("monos",)

    def __init__(self, it=()):
        super().__init__(it)
        self.monos = None


def _mono_fold(m, pending, monos):
    """basis(m) * prod of radicand values over `pending` bits, when every
    radicand is a single monomial; returns (mask, coeff)."""
    c = _Q1
    stack = []
    while pending:
        stack.append((pending & -pending).bit_length() - 1)
        pending &= pending - 1
    while stack:
        mr, qr = monos[stack.pop()]
        c = c * qr
        over = m & mr
        m ^= mr
        while over:
            stack.append((over & -over).bit_length() - 1)
            over &= over - 1
    return m, c


def _bprod(rid, ma, mb, common, rads):
    """Reduced basis product basis(ma)*basis(mb), cached per tower.

    Squared radicals fold back: (sqrt(r_i))^2 = r_i, and r_i only involves
    lower bits, so the reduction terminates.  Single-term products, which
    dominate, are cached as a (mask, coeff) tuple with coeff None when it
    is 1; multi-term products as a list of (mask, coeff) pairs.
    """
    monos = getattr(rads, "monos", None)
    if monos is not None:
        fm, fc = _mono_fold(ma ^ mb, common, monos)
        ent = (fm, None if fc == 1 else fc)
    else:
        prod = {ma ^ mb: _Q1}
        mm = common
        while mm:
            i = (mm & -mm).bit_length() - 1
            prod = _mul(prod, rads[i], rads)
            mm &= mm - 1
        if len(prod) == 1:
            ((fm, fc),) = prod.items()
            ent = (fm, None if fc == 1 else fc)
        else:
            ent = list(prod.items())
    _BPROD[(rid, ma | mb, common)] = ent
    return ent


def _mul(a, b, rads):
    if not a or not b:
        return {}
    if len(a) == 1:
        ((ma, ca),) = a.items()
        if ma == 0:
            return {m: c * ca for m, c in b.items()}
    if len(b) == 1:
        ((mb, cb),) = b.items()
        if mb == 0:
            return {m: c * cb for m, c in a.items()}
    out = {}
    out_get = out.get
    bp_get = _BPROD.get
    rid = id(rads)
    for ma, ca in a.items():
        for mb, cb in b.items():
            common = ma & mb
            c = ca * cb
            if common:
                ent = bp_get((rid, ma | mb, common))
                if ent is None:
                    ent = _bprod(rid, ma, mb, common, rads)
                if type(ent) is tuple:
                    tm, tc = ent
                    if tc is not None:
                        c = tc * c
                else:
                    for tm, tc in ent:
                        _acc(out, tm, tc * c)
                    continue
            else:
                tm = ma ^ mb
            v = out_get(tm)
            if v is None:
                out[tm] = c
            else:
                v = v + c
                if v:
                    out[tm] = v
                else:
                    del out[tm]
    return out


def _sq(a, rads):
    """Square of a rep; the symmetric product halves the term pairs."""
    if not a:
        return {}
    items = list(a.items())
    if len(items) == 1:
        ((ma, ca),) = items
        return _mul({ma: ca}, {ma: ca}, rads) if ma else {0: ca * ca}
    out = {}
    out_get = out.get
    bp_get = _BPROD.get
    rid = id(rads)
    for ia, (ma, ca) in enumerate(items):
        for mb, cb in items[ia:]:
            c = ca * cb
            if ma != mb:
                c += c
            common = ma & mb
            if common:
                ent = bp_get((rid, ma | mb, common))
                if ent is None:
                    ent = _bprod(rid, ma, mb, common, rads)
                if type(ent) is tuple:
                    tm, tc = ent
                    if tc is not None:
                        c = tc * c
                else:
                    for tm, tc in ent:
                        _acc(out, tm, tc * c)
                    continue
            else:
                tm = ma ^ mb
            v = out_get(tm)
            if v is None:
                out[tm] = c
            else:
                v = v + c
                if v:
                    out[tm] = v
                else:
                    del out[tm]
    return out


def _scale_q(a, q):
    if not q:
        return {}
    return {m: c * q for m, c in a.items()}


def _inv(a, rads):
    if not a:
        raise FieldError("division by zero")
    top = -1
    for m in a:
        if m:
            k = m.bit_length() - 1
            if k > top:
                top = k
    if top < 0:
        return {0: 1 / a[0]}
    bit = 1 << top
    b = {m: c for m, c in a.items() if not m & bit}
    c = {m ^ bit: v for m, v in a.items() if m & bit}
    # 1/(b + c*sqrt(r)) = (b - c*sqrt(r)) / (b^2 - c^2*r); the norm is
    # nonzero because r is not a square at its level
    r = rads[top]
    norm = _sub(_mul(b, b, rads), _mul(_mul(c, c, rads), r, rads))
    ninv = _inv(norm, rads)
    out = dict(_mul(b, ninv, rads))
    for m, v in _mul(c, ninv, rads).items():
        out[m | bit] = -v
    return out


def _div(a, b, rads):
    return _mul(a, _inv(b, rads), rads)


def _q_sqrt(q):
    """Exact square root of a rational, or None if it is not a square."""
    if q < 0:
        return None
    num = _Z(q.numerator)
    den = _Z(q.denominator)
    rn = _isqrt(num)
    if rn * rn != num:
        return None
    rd = _isqrt(den)
    if rd * rd != den:
        return None
    return _mkq(rn, rd)


def _sqrt_in_field(x, rads):
    """Square root of x inside its own tower, or None.

    Returns an arbitrary root (caller normalizes the sign); guaranteed to
    square back to x when not None.
    """
    return _sqrt_at(x, len(rads), rads)


def _sqrt_at(x, k, rads):
    if k == 0:
        s = _q_sqrt(x.get(0, _Q0))
        if s is None:
            return None
        return {0: s} if s else {}
    bit = 1 << (k - 1)
    a = {m: c for m, c in x.items() if not m & bit}
    b = {m ^ bit: c for m, c in x.items() if m & bit}
    if not b:
        s = _sqrt_at(a, k - 1, rads)
        if s is not None:
            return s
        # maybe sqrt(a) = t*sqrt(r) with t = sqrt(a/r) in the subfield
        r = rads[k - 1]
        t = _sqrt_at(_div(a, r, rads), k - 1, rads)
        if t is not None:
            return {m | bit: c for m, c in t.items()}
        return None
    # x = (c + e*sqrt(r))^2 forces norm(x) = (c^2 - e^2 r)^2 to be a square
    r = rads[k - 1]
    norm = _sub(_mul(a, a, rads), _mul(_mul(b, b, rads), r, rads))
    d = _sqrt_at(norm, k - 1, rads)
    if d is None:
        return None
    for h in (_scale_q(_add(a, d), _QH), _scale_q(_sub(a, d), _QH)):
        c = _sqrt_at(h, k - 1, rads)
        if not c:
            continue
        e = _div(_scale_q(b, _QH), c, rads)
        cand = dict(c)
        for m, v in e.items():
            cand[m | bit] = v
        if not _sub(_mul(cand, cand, rads), x):
            return cand
    return None


# ---------------------------------------------------------------------------
# numeric evaluation (fast floats + rigorous intervals)
# ---------------------------------------------------------------------------


def _f_eval(rep, sqrt_floats):
    total = 0.0
    for m, c in rep.items():
        v = float(c)
        while m:
            i = (m & -m).bit_length() - 1
            v *= sqrt_floats[i]
            m &= m - 1
        total += v
    return total


def _iv_eval(rep, sqrt_ivs, iv):
    total = iv.mpf(0)
    for m, c in rep.items():
        v = iv.mpf(int(c.numerator)) / iv.mpf(int(c.denominator))
        while m:
            i = (m & -m).bit_length() - 1
            v *= sqrt_ivs[i]
            m &= m - 1
        total += v
    return total


def _iv_sqrt_nonneg(x, iv):
    # radicands are exactly nonnegative; clip rounding dips below zero
    lo = x.a
    if lo < 0:
        lo = iv.mpf(0).a
        x = iv.mpf([lo, x.b])
    return iv.sqrt(x)


def _freeze(rep):
    return tuple(sorted(rep.items(), key=lambda kv: kv[0]))


class Tower:
    """Interned chain of quadratic radicands (each a rep over its prefix)."""

    __slots__ = ("rads", "rdicts", "_sqrt_floats", "_iv_cache", "_rad_exprs")
    _registry = {}

    def __new__(cls, rads):
        hit = cls._registry.get(rads)
        if hit is not None:
            return hit
        self = object.__new__(cls)
        self.rads = rads  # hashable registry key: sorted (mask, coeff) items
        self.rdicts = _Rads(dict(r) for r in rads)
        if all(len(r) == 1 for r in self.rdicts):
            self.rdicts.monos = tuple(next(iter(r.items()))
                                      for r in self.rdicts)
        self._sqrt_floats = None
        self._iv_cache = {}
        self._rad_exprs = [None] * len(rads)
        cls._registry[rads] = self
        return self

    @property
    def depth(self):
        return len(self.rads)

    def extend(self, rad_rep):
        return Tower(self.rads + (_freeze(rad_rep),))

    @property
    def sqrt_floats(self):
        if self._sqrt_floats is None:
            sf = []
            for r in self.rdicts:
                v = _f_eval(r, sf)
                sf.append(math.sqrt(v if v > 0.0 else 0.0))
            self._sqrt_floats = sf
        return self._sqrt_floats

    def sqrt_ivs(self, prec):
        hit = self._iv_cache.get(prec)
        if hit is None:
            iv = mpmath.iv
            old = iv.prec
            iv.prec = prec
            try:
                hit = []
                for r in self.rdicts:
                    hit.append(_iv_sqrt_nonneg(_iv_eval(r, hit, iv), iv))
            finally:
                iv.prec = old
            self._iv_cache[prec] = hit
        return hit

    def rad_expr(self, i):
        e = self._rad_exprs[i]
        if e is None:
            e = "sqrt(%s)" % _rep_expr(self.rdicts[i], self)
            self._rad_exprs[i] = e
        return e


_Q_TOWER = Tower(())

# join cache: (rads1, rads2) -> (tower, lift_maps) where lift_maps[j] is the
# rep (over the joined tower) of sqrt(r_j) for the j-th radicand of the
# second tower.
_JOINS = {}


def _embed(rep, maps, rads):
    """Re-express a foreign rep over the tower whose rdicts are `rads`,
    given reps `maps[j]` of its radicands' square roots."""
    out = {}
    for m, c in rep.items():
        term = {0: c}
        while m:
            i = (m & -m).bit_length() - 1
            term = _mul(term, maps[i], rads)
            m &= m - 1
        for tm, tc in term.items():
            _acc(out, tm, tc)
    return out


def _join(t1, t2):
    if t1 is t2:
        return t1, [{1 << j: _Q1} for j in range(t1.depth)]
    key = (t1.rads, t2.rads)
    hit = _JOINS.get(key)
    if hit is not None:
        return hit
    cur = t1
    maps = []
    for s in t2.rdicts:
        s_lift = _embed(s, maps, cur.rdicts)
        root = _sqrt_in_field(s_lift, cur.rdicts)
        if root is None:
            cur = cur.extend(s_lift)
            maps.append({1 << (cur.depth - 1): _Q1})
        else:
            # _sqrt_in_field may hand back either square root; the radical
            # itself denotes the nonnegative one
            if _sign_nonzero(root, cur) < 0:
                root = _neg(root)
            maps.append(root)
    result = (cur, maps)
    _JOINS[key] = result
    return result


class ConstructibleNumber:
    """Immutable exact element of the real quadratic closure of Q."""

    __slots__ = ("tower", "rep", "f")

    def __init__(self, tower, rep, f=None):
        self.tower = tower
        self.rep = rep
        if f is None:
            f = _f_eval(rep, tower.sqrt_floats)
        self.f = f

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_rational(p, q=1):
        if q == 0:
            raise FieldError("rational with zero denominator")
        return ConstructibleNumber(_Q_TOWER, _from_q(_mkq(p, q)))

    # -- coercion ----------------------------------------------------------

    def _with(self, other):
        if not isinstance(other, ConstructibleNumber):
            if isinstance(other, int):
                other = ConstructibleNumber.from_rational(other)
            else:
                return None, None, None
        t1, t2 = self.tower, other.tower
        if t1 is t2:
            return t1, self.rep, other.rep
        # rational reps ({} or {0: q}) are valid over any tower
        r1, r2 = self.rep, other.rep
        if not r2 or (len(r2) == 1 and 0 in r2):
            return t1, r1, r2
        if not r1 or (len(r1) == 1 and 0 in r1):
            return t2, r1, r2
        # when one tower is a prefix of the other, masks carry over as-is
        d1, d2 = t1.depth, t2.depth
        if d2 <= d1:
            if t1.rads[:d2] == t2.rads:
                return t1, r1, r2
        elif t2.rads[:d1] == t1.rads:
            return t2, r1, r2
        # _join extends t1, so self's masks stay valid unchanged
        tower, maps = _join(t1, t2)
        b = _embed(r2, maps, tower.rdicts)
        return tower, r1, b

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        t, a, b = self._with(other)
        if t is None:
            return NotImplemented
        o = other if isinstance(other, ConstructibleNumber) else None
        f = self.f + (o.f if o else float(other))
        return ConstructibleNumber(t, _add(a, b), f)

    __radd__ = __add__

    def __sub__(self, other):
        t, a, b = self._with(other)
        if t is None:
            return NotImplemented
        o = other if isinstance(other, ConstructibleNumber) else None
        f = self.f - (o.f if o else float(other))
        return ConstructibleNumber(t, _sub(a, b), f)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ConstructibleNumber(self.tower, _neg(self.rep), -self.f)

    def __mul__(self, other):
        if other is self:
            return ConstructibleNumber(
                self.tower, _sq(self.rep, self.tower.rdicts),
                self.f * self.f)
        t, a, b = self._with(other)
        if t is None:
            return NotImplemented
        o = other if isinstance(other, ConstructibleNumber) else None
        f = self.f * (o.f if o else float(other))
        return ConstructibleNumber(t, _mul(a, b, t.rdicts), f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        t, a, b = self._with(other)
        if t is None:
            return NotImplemented
        if not b:
            raise FieldError("division by zero")
        o = other if isinstance(other, ConstructibleNumber) else None
        f = self.f / (o.f if o else float(other))
        return ConstructibleNumber(t, _div(a, b, t.rdicts), f)

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return ConstructibleNumber.from_rational(other) / self
        return NotImplemented

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.rep

    def is_rational(self):
        rep = self.rep
        return not rep or (len(rep) == 1 and 0 in rep)

    def as_rational(self):
        """The exact rational value, or None when irrational."""
        rep = self.rep
        if not rep:
            return _Q0
        if len(rep) == 1 and 0 in rep:
            return rep[0]
        return None

    def sign(self):
        """Exact sign in {-1, 0, +1}; zero is decided symbolically."""
        if not self.rep:
            return 0
        return _sign_nonzero(self.rep, self.tower)

    def __eq__(self, other):
        if isinstance(other, (ConstructibleNumber, int)):
            o = other if isinstance(other, ConstructibleNumber) else None
            fo = o.f if o else float(other)
            if abs(self.f - fo) > 1e-9 * (1.0 + abs(self.f) + abs(fo)):
                return False
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None  # equal values from different towers would hash apart

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # -- roots -------------------------------------------------------------

    def sqrt(self):
        """Nonnegative square root; extends the tower only when needed."""
        s = self.sign()
        if s < 0:
            raise FieldError("sqrt of a negative number")
        if s == 0:
            return ConstructibleNumber(_Q_TOWER, {})
        root = _sqrt_in_field(self.rep, self.tower.rdicts)
        if root is not None:
            r = ConstructibleNumber(self.tower, root)
            if _sign_nonzero(root, self.tower) < 0:
                r = -r
            return r
        tower = self.tower.extend(self.rep)
        rep = {1 << (tower.depth - 1): _Q1}
        return ConstructibleNumber(tower, rep, math.sqrt(self.f))

    # -- numeric -----------------------------------------------------------

    def interval(self, prec):
        """Rigorous enclosure at the given binary precision."""
        iv = mpmath.iv
        old = iv.prec
        iv.prec = prec
        try:
            return _iv_eval(self.rep, self.tower.sqrt_ivs(prec), iv)
        finally:
            iv.prec = old

    def approx(self, k):
        """Decimal string within 10**-k of the true value."""
        if k <= 0:
            raise FieldError("approx needs a positive digit count")
        target = mpmath.mpf(10) ** (-k) / 2
        prec = 64
        while True:
            box = self.interval(prec)
            if box.delta <= target:
                mid = box.mid
                break
            prec *= 2
        return _format_decimal(mid, k)

    def __float__(self):
        return self.f

    def __repr__(self):
        return "CN(%s ~ %.12g)" % (self.to_expr(), self.f)

    # -- serialization -----------------------------------------------------

    def to_expr(self):
        """Expression in the closed grammar; parse_expr round-trips exactly."""
        return _rep_expr(self.rep, self.tower)


def _sign_nonzero(rep, tower):
    prec = 64
    iv = mpmath.iv
    while True:
        old = iv.prec
        iv.prec = prec
        try:
            box = _iv_eval(rep, tower.sqrt_ivs(prec), iv)
        finally:
            iv.prec = old
        if box.a > 0:
            return 1
        if box.b < 0:
            return -1
        prec *= 2
        if prec > 1 << 20:  # structural nonzero guarantees termination
            raise RuntimeError("sign refinement failed to converge")


def _format_decimal(mid, k):
    # fixed-point with k digits after the point, via exact integer rounding
    q = mpmath.mpf(10) ** k * mid
    n = int(mpmath.nint(q))
    sign = "-" if n < 0 else ""
    n = abs(n)
    digits = str(n).rjust(k + 1, "0")
    return "%s%s.%s" % (sign, digits[:-k] if k else digits, digits[-k:])


def _q_expr(q):
    p = int(q.numerator)
    s = int(q.denominator)
    if p < 0:
        inner = str(-p) if s == 1 else "%d/%d" % (-p, s)
        return "(0-%s)" % inner
    return str(p) if s == 1 else "%d/%d" % (p, s)


def _rep_expr(rep, tower):
    if not rep:
        return "0"
    terms = []
    for m, c in sorted(rep.items()):
        if m == 0:
            terms.append(_q_expr(c))
            continue
        parts = []
        while m:
            i = (m & -m).bit_length() - 1
            parts.append(tower.rad_expr(i))
            m &= m - 1
        body = "*".join(parts)
        if c == 1:
            terms.append(body)
        else:
            terms.append("(%s)*%s" % (_q_expr(c), body))
    expr = terms[0]
    for t in terms[1:]:
        expr = "(%s+%s)" % (expr, t)
    return expr


# ---------------------------------------------------------------------------
# expression grammar
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := integer | 'sqrt' '(' expr ')' | '(' expr ')'
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|sqrt|[()+\-*/])")


class ExprNode:
    """AST node: op in {'int','add','sub','mul','div','sqrt'}."""

    __slots__ = ("op", "value", "args")

    def __init__(self, op, value=None, args=()):
        self.op = op
        self.value = value
        self.args = tuple(args)

    def __repr__(self):
        if self.op == "int":
            return str(self.value)
        return "%s(%s)" % (self.op, ", ".join(map(repr, self.args)))


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise FieldError("bad character in expression: %r" % text[pos])
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise FieldError("expected %r, got %r" % (expected, tok))
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            node = ExprNode("add" if op == "+" else "sub",
                            args=(node, self.term()))
        return node

    def term(self):
        node = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            node = ExprNode("mul" if op == "*" else "div",
                            args=(node, self.factor()))
        return node

    def factor(self):
        tok = self.peek()
        if tok is None:
            raise FieldError("unexpected end of expression")
        if tok == "sqrt":
            self.take()
            self.take("(")
            inner = self.expr()
            self.take(")")
            return ExprNode("sqrt", args=(inner,))
        if tok == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if tok.isdigit():
            self.take()
            return ExprNode("int", value=int(tok))
        raise FieldError("unexpected token %r" % tok)


def parse_ast(text):
    tokens = _tokenize(text)
    if not tokens:
        raise FieldError("empty expression")
    p = _Parser(tokens)
    node = p.expr()
    if p.peek() is not None:
        raise FieldError("trailing input after expression: %r" % p.peek())
    return node


def eval_ast(node):
    if node.op == "int":
        return ConstructibleNumber.from_rational(node.value)
    if node.op == "sqrt":
        return eval_ast(node.args[0]).sqrt()
    a = eval_ast(node.args[0])
    b = eval_ast(node.args[1])
    if node.op == "add":
        return a + b
    if node.op == "sub":
        return a - b
    if node.op == "mul":
        return a * b
    if node.op == "div":
        return a / b
    raise FieldError("unknown op %r" % node.op)


def parse_expr(text):
    """Parse the closed expression grammar into an exact number."""
    return eval_ast(parse_ast(text))


# convenient public aliases -------------------------------------------------

CN = ConstructibleNumber


def join_towers(t1, t2):
    """The smallest interned tower containing both operand towers."""
    if t1 is t2:
        return t1
    return _join(t1, t2)[0]


def lift(a, tower):
    """Re-express `a` over `tower`, which must contain a's tower.

    Lifting once and then operating within a single tower avoids the
    per-operation embedding cost of mixed-tower arithmetic.
    """
    if a.tower is tower:
        return a
    d = a.tower.depth
    if tower.rads[:d] == a.tower.rads:  # prefix: masks carry over unchanged
        return ConstructibleNumber(tower, a.rep, a.f)
    t, maps = _join(tower, a.tower)
    if t is not tower:
        raise FieldError("lift target does not contain the value's tower")
    rep = _embed(a.rep, maps, t.rdicts)
    return ConstructibleNumber(t, rep, a.f)


def prune(a):
    """Re-express `a` over the smallest subtower it needs.

    Dropping unused radicands keeps tower depth, and with it the cost of
    joins and sign refinement, from creeping up across long derivations.
    """
    d = a.tower.depth
    if d == 0:
        return a
    full = (1 << d) - 1
    used = 0
    for m in a.rep:
        used |= m
    if used != full:
        # a kept radicand's own rep may reference lower radicands
        rdicts = a.tower.rdicts
        for k in range(d - 1, -1, -1):
            if used >> k & 1:
                for m in rdicts[k]:
                    used |= m
    if used == full:
        return a
    keep = [k for k in range(d) if used >> k & 1]
    remap = {1 << k: 1 << i for i, k in enumerate(keep)}

    def _relabel(m):
        out = 0
        while m:
            b = m & -m
            out |= remap[b]
            m ^= b
        return out

    rdicts = a.tower.rdicts
    new_rads = tuple(
        _freeze({_relabel(m): c for m, c in rdicts[k].items()}) for k in keep)
    rep = {_relabel(m): c for m, c in a.rep.items()}
    return ConstructibleNumber(Tower(new_rads), rep, a.f)


def rational(p, q=1):
    return ConstructibleNumber.from_rational(p, q)


def arith(kind, a, b):
    """Spec-surface arithmetic dispatch (add/sub/mul/div)."""
    ops = {"add": a.__add__, "sub": a.__sub__,
           "mul": a.__mul__, "div": a.__truediv__}
    if kind not in ops:
        raise FieldError("unknown arithmetic kind %r" % kind)
    return ops[kind](b)


def sqrt(a):
    if isinstance(a, int):
        a = rational(a)
    return a.sqrt()


def sign(a):
    return a.sign()


ZERO = rational(0)
ONE = rational(1)
