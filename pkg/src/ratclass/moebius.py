"""Moebius transformations (a x + b)/(c x + d) over a finite field.

A transformation is stored as a projective matrix normalized so that its
first nonzero entry in row-major order is 1; with the nonzero-determinant
requirement this makes each group element a unique value, so sets of
them deduplicate correctly.  The module also provides the two-sided pair
action (B, A) . R = B(R(A^{-1}(x))) on rational expressions, cross-ratios
of four projective points, and the order-6 group S acting on cross-ratio
values by lam -> 1/lam and lam -> 1 - lam.
"""

from __future__ import annotations

from .ffield import DESK_SCALE_BOUND, Fel
from .poly import Poly, _mk, _trim
from .ratexpr import INF, RatExpr, proj_key


def _coerce(ctx, v):
    if isinstance(v, Fel):
        if v.ctx is not ctx:
            raise TypeError("entry from a different field")
        return v
    if isinstance(v, int):
        return ctx.scalar(v)
    raise TypeError("matrix entries must be field elements or ints")


class Moebius:
    """One element of PGL_2(F), acting on P^1 as (a x + b)/(c x + d)."""

    __slots__ = ("ctx", "a", "b", "c", "d")

    def __init__(self, ctx, a, b, c, d):
        a = _coerce(ctx, a)
        b = _coerce(ctx, b)
        c = _coerce(ctx, c)
        d = _coerce(ctx, d)
        if (a * d - b * c).key == 0:
            raise ValueError("zero determinant")
        for lead in (a, b, c):
            if lead.key:
                break
        else:
            lead = d
        if lead.key != 1:
            inv = lead.inverse()
            a, b, c, d = a * inv, b * inv, c * inv, d * inv
        self.ctx = ctx
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @property
    def key(self):
        return (self.a.key, self.b.key, self.c.key, self.d.key)

    def __call__(self, P):
        """The induced map on P^1 (an alias of act_point)."""
        if P is INF:
            if self.c.key == 0:
                return INF
            return self.a / self.c
        nv = self.a * P + self.b
        dv = self.c * P + self.d
        if dv.key:
            return nv / dv
        return INF

    def compose(self, other):
        """self after other, by matrix product."""
        if other.ctx is not self.ctx:
            raise TypeError("composition across different fields")
        return Moebius(self.ctx,
                       self.a * other.a + self.b * other.c,
                       self.a * other.b + self.b * other.d,
                       self.c * other.a + self.d * other.c,
                       self.c * other.b + self.d * other.d)

    def inverse(self):
        return Moebius(self.ctx, self.d, -self.b, -self.c, self.a)

    def as_ratexpr(self):
        return RatExpr(Poly(self.ctx, (self.b, self.a)),
                       Poly(self.ctx, (self.d, self.c)))

    def lift(self, emb):
        return Moebius(emb.dst, emb(self.a), emb(self.b),
                       emb(self.c), emb(self.d))

    def descend(self, emb):
        """The same transformation over emb.src, or None if any entry
        lies outside the embedded subfield."""
        try:
            return Moebius(emb.src, emb.preimage(self.a),
                           emb.preimage(self.b), emb.preimage(self.c),
                           emb.preimage(self.d))
        except ValueError:
            return None

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        return self.ctx is other.ctx and self.key == other.key

    def __hash__(self):
        return hash((self.ctx.uid, self.key))

    def __str__(self):
        return str(self.as_ratexpr())

    def __repr__(self):
        return "Moebius(%s, %s)" % (self.ctx.name, self)


def identity(ctx):
    return Moebius(ctx, 1, 0, 0, 1)


def moebius_compose(M, N):
    """The composite M after N."""
    return M.compose(N)


def moebius_inverse(M):
    return M.inverse()


def act_point(M, P):
    return M(P)


def from_ratexpr(R):
    """The Moebius transformation equal to a degree-1 expression."""
    if R.degree != 1:
        raise ValueError("not a degree-1 expression")
    return Moebius(R.ctx, R.num.coeff(1), R.num.coeff(0),
                   R.den.coeff(1), R.den.coeff(0))


def three_point_map(a, b, c):
    """The unique transformation sending inf, 0, 1 to a, b, c.

    For finite points this is ( a(b-c)x + b(c-a) ) / ( (b-c)x + (c-a) );
    an infinite argument replaces the matrix by its coefficient of that
    argument, which is the natural projective degeneration.
    """
    pts = (a, b, c)
    for i in range(3):
        for j in range(i + 1, 3):
            same = (pts[i] is INF and pts[j] is INF) or (
                pts[i] is not INF and pts[j] is not INF
                and pts[i] == pts[j])
            if same:
                raise ValueError("three_point_map needs distinct points")
    ctx = next(P.ctx for P in pts if P is not INF)
    if a is INF:
        return Moebius(ctx, c - b, b, 0, 1)
    if b is INF:
        return Moebius(ctx, a, c - a, 1, 0)
    if c is INF:
        return Moebius(ctx, a, -b, 1, -1)
    return Moebius(ctx, a * (b - c), b * (c - a), b - c, c - a)


def map_triple(src, dst):
    """A transformation sending the triple src onto the triple dst."""
    return three_point_map(*dst).compose(three_point_map(*src).inverse())


class PairAction:
    """A pair (B, A) acting on expressions by R -> B(R(A^{-1}(x)))."""

    __slots__ = ("B", "A")

    def __init__(self, B, A):
        if B.ctx is not A.ctx:
            raise TypeError("pair over different fields")
        self.B = B
        self.A = A

    @property
    def ctx(self):
        return self.B.ctx

    def compose(self, other):
        return PairAction(self.B.compose(other.B), self.A.compose(other.A))

    def inverse(self):
        return PairAction(self.B.inverse(), self.A.inverse())

    def __eq__(self, other):
        if not isinstance(other, PairAction):
            return NotImplemented
        return self.B == other.B and self.A == other.A

    def __hash__(self):
        return hash((self.B, self.A))

    def __repr__(self):
        return "PairAction(B=%s, A=%s)" % (self.B, self.A)


def pair_identity(ctx):
    return PairAction(identity(ctx), identity(ctx))


def _subst_moebius(f, M, weight):
    """The weight-homogenized substitution f((ax+b)/(cx+d)) (cx+d)^weight."""
    ctx = f.ctx
    lin_n = _mk(ctx, _trim((M.b, M.a)))
    lin_d = _mk(ctx, _trim((M.d, M.c)))
    npow = [_mk(ctx, (ctx.one,))]
    dpow = [_mk(ctx, (ctx.one,))]
    for _ in range(weight):
        npow.append(npow[-1] * lin_n)
        dpow.append(dpow[-1] * lin_d)
    out = Poly(ctx, ())
    for i in range(weight + 1):
        cf = f.coeff(i)
        if cf.key:
            out = out + cf * (npow[i] * dpow[weight - i])
    return out


def act(pair, R):
    """The pair action (B, A) . R = B(R(A^{-1}(x))), normalized."""
    if R.degree < 1:
        raise ValueError("the action is defined on nonconstant expressions")
    if pair.ctx is not R.ctx:
        raise TypeError("pair and expression over different fields")
    Ai = pair.A.inverse()
    r = R.degree
    n1 = _subst_moebius(R.num, Ai, r)
    d1 = _subst_moebius(R.den, Ai, r)
    B = pair.B
    return RatExpr(B.a * n1 + B.b * d1, B.c * n1 + B.d * d1)


def enumerate_pgl2(ctx):
    """All q^3 - q group elements, each exactly once, in a fixed order.

    Normalized representatives have first row (1, b) or (0, 1); the
    (1, b) block runs first, ordered by the codes of (b, c, d), then the
    (0, 1) block ordered by (c, d).
    """
    q = ctx.q
    if q ** 3 - q > DESK_SCALE_BOUND:
        raise ValueError("PGL_2(%s) exceeds the enumeration bound" % ctx.name)
    out = []
    els = list(ctx)
    for b in els:
        for c in els:
            bc = b * c
            for d in els:
                if d != bc:
                    out.append(Moebius(ctx, ctx.one, b, c, d))
    zero = ctx.zero
    for c in els:
        if c.key:
            for d in els:
                out.append(Moebius(ctx, zero, ctx.one, c, d))
    return out


def cross_ratio(x1, x2, x3, x4):
    """The cross-ratio (x1-x3)(x2-x4) / ( (x2-x3)(x1-x4) ).

    An infinite entry clears the two factors containing it.  The inputs
    must be pairwise distinct, so the value never lands in {0, 1, inf}.
    """
    pts = (x1, x2, x3, x4)
    for i in range(4):
        for j in range(i + 1, 4):
            same = (pts[i] is INF and pts[j] is INF) or (
                pts[i] is not INF and pts[j] is not INF
                and pts[i] == pts[j])
            if same:
                raise ValueError("cross-ratio needs distinct points")
    ctx = next(P.ctx for P in pts if P is not INF)
    num = ctx.one
    den = ctx.one
    if x1 is not INF and x3 is not INF:
        num = num * (x1 - x3)
    if x2 is not INF and x4 is not INF:
        num = num * (x2 - x4)
    if x2 is not INF and x3 is not INF:
        den = den * (x2 - x3)
    if x1 is not INF and x4 is not INF:
        den = den * (x1 - x4)
    return num / den


def s_group_maps(ctx):
    """The six maps of S as transformations of the cross-ratio line:
    lam, 1/lam, 1-lam, lam/(lam-1), 1/(1-lam), (lam-1)/lam."""
    return (
        Moebius(ctx, 1, 0, 0, 1),
        Moebius(ctx, 0, 1, 1, 0),
        Moebius(ctx, -1, 1, 0, 1),
        Moebius(ctx, 1, 0, 1, -1),
        Moebius(ctx, 0, 1, -1, 1),
        Moebius(ctx, 1, -1, 1, 0),
    )


def s_orbit(lam, ctx=None):
    """The S-orbit of a cross-ratio value (a set of points of P^1)."""
    if ctx is None:
        ctx = lam.ctx
    return {M(lam) for M in s_group_maps(ctx)}


def s_orbit_min(lam, ctx=None):
    """The least orbit member: inf first, then by element code."""
    return min(s_orbit(lam, ctx), key=proj_key)


def s_centralizer_involution(lam, ctx=None):
    """The commuting involution lam -> (lam-2)/(2*lam-1).

    Faithful (an involution commuting with all of S) only away from
    characteristics 2 and 3; the formula itself is evaluated projectively
    in any characteristic, with a ValueError on the characteristic-3
    degeneration at lam = -1 where it reads 0/0.
    """
    if ctx is None:
        ctx = lam.ctx
    if lam is INF:
        num = ctx.one
        den = ctx.scalar(2)
    else:
        num = lam - 2
        den = 2 * lam - 1
    if den.key == 0:
        if num.key == 0:
            raise ValueError("degenerate value in characteristic 3")
        return INF
    return num / den
