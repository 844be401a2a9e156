"""Classification of quadratic and cubic expressions over F_q.

Two expressions R and R2 are equivalent when some pair of Moebius
transformations satisfies B(R(A^{-1}(x))) = R2(x).  This module names
the class of a given quadratic or cubic expression, produces the
canonical representative of that class, and constructs an exact
witnessing pair.  Classes with at most three ramification points have
one canonical representative per characteristic; cubics with four
ramification points are named by cross-ratio invariants instead, and
carry no witness.

Witness construction mirrors the structure of each class: a source-side
transformation A aligns distinguished points (ramification points,
further preimages of branch values) with those of the canonical form,
and the target-side transformation B is then forced by three probe
values.  Conjugate ramification points are handled over F_{q^2} using
the canonical tau, and the alignment maps are checked to be
Frobenius-stable rather than assumed, so they descend to F_q.
"""

from __future__ import annotations

import math

from .ffield import (canonical_sigma, canonical_tau, canonical_theta, embed,
                     extend, frobenius, is_square, sqrt)
from .moebius import (Moebius, PairAction, act, cross_ratio, enumerate_pgl2,
                      identity, map_triple, s_group_maps, three_point_map)
from .poly import Poly
from .ramify import is_separable, ramification_profile
from .ratexpr import INF, RatExpr, expr, proj_key, proj_points, proj_str


CASES = (
    "Quad_X2", "Quad_TwoPointTwist", "Quad_X2_Insep", "Quad_SepChar2",
    "Cubic_X3", "Cubic_TwoPointTwist", "Cubic_Dickson", "Cubic_DicksonTwist",
    "Cubic3_X3_Insep", "Cubic3_X3X2", "Cubic3_X3X", "Cubic3_X3SigmaX",
    "Cubic2_i", "Cubic2_ii", "Cubic2_iii", "Cubic2_iv", "Cubic2_v",
    "Cubic2_vi", "FourPoint",
)


class ClassLabel:
    """A named equivalence class together with its parameters.

    case is one of the tags in CASES.  params carries whatever
    distinguishes classes sharing a tag: the theta-power k for
    Cubic2_iv, the field parameter c or b for Cubic2_v / Cubic2_vi, and
    for FourPoint the invariants lambda, mu, mu_alt and the pattern of
    defining degrees.  Labels compare and hash by tag and parameters.
    """

    __slots__ = ("case", "params")

    def __init__(self, case, params=None):
        if case not in CASES:
            raise ValueError("unknown class tag %r" % (case,))
        self.case = case
        self.params = tuple(sorted((params or {}).items()))

    def param(self, name):
        for k, v in self.params:
            if k == name:
                return v
        raise KeyError(name)

    @property
    def params_dict(self):
        return dict(self.params)

    def __eq__(self, other):
        if not isinstance(other, ClassLabel):
            return NotImplemented
        return self.case == other.case and self.params == other.params

    def __hash__(self):
        return hash((self.case, self.params))

    def __repr__(self):
        inner = "".join(", %s=%r" % kv for kv in self.params)
        return "ClassLabel(%r%s)" % (self.case, inner)


class Witness:
    """An exact equivalence pair: act(pair, source) equals target.

    The defining equation is re-checked on construction, so a Witness
    in hand is always sound.
    """

    __slots__ = ("pair", "source", "target")

    def __init__(self, pair, source, target):
        if act(pair, source) != target:
            raise ValueError("pair does not map the source onto the target")
        self.pair = pair
        self.source = source
        self.target = target

    @property
    def B(self):
        return self.pair.B

    @property
    def A(self):
        return self.pair.A

    def __repr__(self):
        return "Witness(%r)" % (self.pair,)


def canonical_rep(label, ctx):
    """The canonical representative of a class over ctx.

    Uses the canonical sigma and theta of the field.  FourPoint labels
    have no canonical representative and raise ValueError, as does a
    label that does not fit the characteristic of ctx.
    """
    case = label.case
    p = ctx.p

    def need(cond):
        if not cond:
            raise ValueError("label %s does not fit %s" % (case, ctx.name))

    if case == "Quad_X2":
        need(p != 2)
        return expr(ctx, (0, 0, 1))
    if case == "Quad_TwoPointTwist":
        need(p != 2)
        return canonical_two_point(2, True, ctx)
    if case == "Quad_X2_Insep":
        need(p == 2)
        return expr(ctx, (0, 0, 1))
    if case == "Quad_SepChar2":
        need(p == 2)
        return expr(ctx, (1, 0, 1), (0, 1))
    if case == "Cubic_X3":
        need(p >= 5)
        return expr(ctx, (0, 0, 0, 1))
    if case == "Cubic_TwoPointTwist":
        need(p >= 5)
        return canonical_two_point(3, True, ctx)
    if case == "Cubic_Dickson":
        need(p >= 5)
        return expr(ctx, (0, -3, 0, 1))
    if case == "Cubic_DicksonTwist":
        need(p >= 5)
        sig = canonical_sigma(ctx)
        return expr(ctx, (ctx.zero, -(ctx.scalar(3) * sig), ctx.zero, ctx.one))
    if case == "Cubic3_X3_Insep":
        need(p == 3)
        return expr(ctx, (0, 0, 0, 1))
    if case == "Cubic3_X3X2":
        need(p == 3)
        return expr(ctx, (0, 0, 1, 1))
    if case == "Cubic3_X3X":
        need(p == 3)
        return expr(ctx, (0, 1, 0, 1))
    if case == "Cubic3_X3SigmaX":
        need(p == 3)
        return expr(ctx, (ctx.zero, canonical_sigma(ctx), ctx.zero, ctx.one))
    if case == "Cubic2_i":
        need(p == 2)
        return expr(ctx, (0, 0, 0, 1))
    if case == "Cubic2_ii":
        need(p == 2)
        sig = canonical_sigma(ctx)
        return expr(ctx, (sig, sig, ctx.zero, ctx.one),
                    (sig + ctx.one, ctx.one, ctx.one))
    if case == "Cubic2_iii":
        need(p == 2)
        return expr(ctx, (0, 0, 1, 1))
    if case == "Cubic2_iv":
        need(p == 2)
        k = label.param("k")
        need(k in (0, 1, 2))
        if k == 0:
            const = ctx.one
        else:
            need((ctx.q - 1) % 3 == 0)
            const = canonical_theta(ctx) ** k
        return expr(ctx, (const, ctx.zero, ctx.zero, ctx.one), (0, 1))
    if case == "Cubic2_v":
        need(p == 2)
        c = label.param("c")
        need(c.ctx is ctx and c * c != c)
        return expr(ctx, (c, ctx.zero, ctx.zero, ctx.one), (c, ctx.one))
    if case == "Cubic2_vi":
        need(p == 2)
        b = label.param("b")
        need(b.ctx is ctx and b * b != b)
        sig = canonical_sigma(ctx)
        one = ctx.one
        return expr(ctx, ((b + one) * sig, sig, b, one),
                    (b + one + sig, one, one))
    if case == "FourPoint":
        raise ValueError("four-point classes have no canonical representative")
    raise AssertionError("unhandled tag " + case)


def canonical_two_point(r, twist, ctx):
    """The canonical degree-r expression ramified at the conjugate pair
    +-tau, or x^r for the untwisted class ramified at infinity and 0.

    The twisted form has numerator sum_h C(r,2h) x^(r-2h) sigma^h over
    denominator sum_h C(r,2h+1) x^(r-2h-1) sigma^h.  Odd characteristic
    not dividing r only.
    """
    if r < 2:
        raise ValueError("the two-point family starts at degree 2")
    if ctx.p == 2 or r % ctx.p == 0:
        raise ValueError("needs odd characteristic not dividing %d" % r)
    if not twist:
        return expr(ctx, (0,) * r + (1,))
    sig = canonical_sigma(ctx)
    num = [ctx.zero] * (r + 1)
    den = [ctx.zero] * r
    sh = ctx.one
    for h in range(r // 2 + 1):
        num[r - 2 * h] = ctx.scalar(math.comb(r, 2 * h)) * sh
        if 2 * h + 1 <= r:
            den[r - 2 * h - 1] = ctx.scalar(math.comb(r, 2 * h + 1)) * sh
        sh = sh * sig
    return RatExpr(Poly(ctx, tuple(num)), Poly(ctx, tuple(den)))


def family_Rc(c):
    """The one-parameter cubic family member for the ambient field.

    Characteristic at least 5: (x^3+(c-2)x^2) / ((2c-1)x-c), c not 0, 1.
    Characteristic 3: (x^3+(c+1)x^2) / (-(c+1)x-c), c outside F_3.
    Characteristic 2: (x^3+cx^2) / (x+1), c outside F_2.
    """
    ctx = c.ctx
    one = ctx.one
    if ctx.p >= 5:
        if c.key in (0, 1):
            raise ValueError("degenerate parameter %s" % c)
        two = ctx.scalar(2)
        return expr(ctx, (ctx.zero, ctx.zero, c - two, one),
                    (-c, two * c - one))
    if ctx.p == 3:
        if c ** 3 == c:
            raise ValueError("parameter %s lies in the prime field" % c)
        return expr(ctx, (ctx.zero, ctx.zero, c + one, one),
                    (-c, -(c + one)))
    if c * c == c:
        raise ValueError("parameter %s lies in F_2" % c)
    return expr(ctx, (ctx.zero, ctx.zero, c, one), (1, 1))


def lambda_mu_of_c(c):
    """The ramification and branch cross-ratios of the cubic family.

    lambda = -c(c-2)/(2c-1) and mu = -c(c-2)^3/(2c-1)^3, evaluated
    projectively (c = 1/2 yields the infinite degeneration).  Defined
    away from characteristics 2 and 3 and from c in {0, 1}.
    """
    ctx = c.ctx
    if ctx.p < 5:
        raise ValueError("defined away from characteristics 2 and 3")
    if c.key in (0, 1):
        raise ValueError("degenerate parameter %s" % c)
    two = ctx.scalar(2)
    den = two * c - ctx.one
    if den.key == 0:
        return INF, INF
    lam = -(c * (c - two)) / den
    mu = -(c * (c - two) ** 3) / den ** 3
    return lam, mu


def lambda_mu_relation(lam, mu):
    """Whether mu^2 - 2 lam mu (2 lam^2 - 3 lam + 2) + lam^4 vanishes.

    The pair of cross-ratios of a four-point cubic always satisfies
    this.  Requires characteristic at least 5 and nondegenerate lam; an
    infinite mu never satisfies the relation (the mu^2 coefficient is a
    unit).
    """
    if lam is INF:
        raise ValueError("degenerate lambda")
    ctx = lam.ctx
    if ctx.p < 5:
        raise ValueError("defined away from characteristics 2 and 3")
    if lam.key in (0, 1):
        raise ValueError("degenerate lambda")
    if mu is INF:
        return False
    two = ctx.scalar(2)
    three = ctx.scalar(3)
    val = mu * mu - two * lam * mu * (two * lam * lam - three * lam + two) \
        + lam ** 4
    return val.key == 0


# ---------------------------------------------------------------------------
# witness machinery


def _post(B, S):
    """B composed after S, as an expression."""
    return RatExpr(B.a * S.num + B.b * S.den, B.c * S.num + B.d * S.den)


def _precompose(R, A):
    """R composed with A, that is R(A(x))."""
    return act(PairAction(identity(R.ctx), A.inverse()), R)


def _probe_field(ctx, npoints):
    """A field whose projective line has at least npoints points,
    together with the embedding from ctx (None when ctx suffices)."""
    e = 1
    while ctx.q ** e + 1 < npoints:
        e += 1
    if e == 1:
        return ctx, None
    top, em = extend(ctx, e)
    return top, em


def _forced_post(S, T):
    """The unique B over the base field with B(S(x)) = T(x), or None.

    Probe points run over an extension large enough that three distinct
    S-values must appear; the transformation matching them to the
    T-values is then checked exactly and must descend to the base.
    """
    ctx = S.ctx
    top, em = _probe_field(ctx, 2 * S.degree + 1)
    Se = S if em is None else S.lift(em)
    Te = T if em is None else T.lift(em)
    svals = []
    tvals = []
    for P in proj_points(top):
        v = Se(P)
        if any(proj_key(v) == proj_key(u) for u in svals):
            continue
        svals.append(v)
        tvals.append(Te(P))
        if len(svals) == 3:
            break
    if len(svals) < 3:
        return None
    for i in range(3):
        for j in range(i + 1, 3):
            if proj_key(tvals[i]) == proj_key(tvals[j]):
                return None
    B = map_triple(tuple(svals), tuple(tvals))
    if em is not None:
        B = B.descend(em)
        if B is None:
            return None
    return B if _post(B, S) == T else None


def _aligned_pair(R, T, A0):
    """Complete a source alignment A0 to a full pair onto T, or None."""
    S = _precompose(R, A0)
    B = _forced_post(S, T)
    if B is None:
        return None
    return PairAction(B, A0.inverse())


def _first_points(ctx, avoid, count):
    """The first count projective points outside avoid, in fixed order."""
    keys = {proj_key(P) for P in avoid}
    out = []
    for P in proj_points(ctx):
        if proj_key(P) not in keys:
            out.append(P)
            if len(out) == count:
                return out
    raise AssertionError("projective line exhausted")


def _witness_power_insep(R, r):
    """Witness for an inseparable R, which equals N(x^r) coefficientwise."""
    ctx = R.ctx
    for f in (R.num, R.den):
        if any(f.coeff(i).key for i in range(1, r)):
            raise AssertionError("inseparable expression with odd support")
    N = Moebius(ctx, R.num.coeff(r), R.num.coeff(0),
                R.den.coeff(r), R.den.coeff(0))
    return PairAction(N.inverse(), identity(ctx))


def _witness_power(R, prof, T):
    """Witness onto x^r for a pair of rational ramification points."""
    p1, p2 = (pt.point for pt in prof.points)
    for a, b in ((p1, p2), (p2, p1)):
        w = _first_points(R.ctx, (a, b), 1)[0]
        pair = _aligned_pair(R, T, three_point_map(a, b, w))
        if pair is not None:
            return pair
    raise AssertionError("two-point alignment failed for %s" % R)


def _witness_two_point_conj(R, prof, T):
    """Witness onto the twisted two-point form for conjugate points."""
    ctx = R.ctx
    em = extend(ctx, 2)[1]
    tau = canonical_tau(ctx)
    tauc = frobenius(tau, ctx.n)
    r1, r2 = (pt.point for pt in prof.points)
    for a, b in ((r1, r2), (r2, r1)):
        A0 = map_triple((tau, tauc, INF), (a, b, INF)).descend(em)
        if A0 is None:
            continue
        pair = _aligned_pair(R, T, A0)
        if pair is not None:
            return pair
    raise AssertionError("conjugate alignment failed for %s" % R)


def _witness_dickson(R, prof, T):
    """Witness onto x^3 - 3x for three rational ramification points."""
    p3 = next(pt.point for pt in prof.points if pt.index == 3)
    t1, t2 = (pt.point for pt in prof.points if pt.index == 2)
    one = R.ctx.one
    for a, b in ((t1, t2), (t2, t1)):
        pair = _aligned_pair(R, T, map_triple((INF, one, -one), (p3, a, b)))
        if pair is not None:
            return pair
    raise AssertionError("three-point alignment failed for %s" % R)


def _witness_dickson_conj(R, prof, T):
    """Witness onto x^3 - 3 sigma x: conjugate pair plus a rational point."""
    ctx = R.ctx
    em = extend(ctx, 2)[1]
    tau = canonical_tau(ctx)
    p3 = next(pt.point for pt in prof.points if pt.index == 3)
    p3e = INF if p3 is INF else em(p3)
    t1, t2 = (pt.point for pt in prof.points if pt.index == 2)
    for a, b in ((t1, t2), (t2, t1)):
        A0 = map_triple((tau, -tau, INF), (a, b, p3e)).descend(em)
        if A0 is None:
            continue
        pair = _aligned_pair(R, T, A0)
        if pair is not None:
            return pair
    raise AssertionError("conjugate alignment failed for %s" % R)


def _scale(ctx, s):
    return Moebius(ctx, s, ctx.zero, ctx.zero, ctx.one)


def _reduce_to_poly(R, prof):
    """Move the index-3 ramification point and its branch value to
    infinity: returns (A0, B0, C0) with C0 = B0(R(A0(x))) a polynomial.

    A0 also sends 0 to the second ramification point when one exists.
    """
    ctx = R.ctx
    p3 = next(pt.point for pt in prof.points if pt.index == 3)
    rest = [pt.point for pt in prof.points if pt.index != 3]
    if rest:
        u, v = rest[0], _first_points(ctx, (p3, rest[0]), 1)[0]
    else:
        u, v = _first_points(ctx, (p3,), 2)
    A0 = three_point_map(p3, u, v)
    S = _precompose(R, A0)
    q3 = S(INF)
    if rest:
        q2 = S(ctx.zero)
        z = _first_points(ctx, (q3, q2), 1)[0]
        B0 = three_point_map(q3, q2, z).inverse()
    else:
        z1, z2 = _first_points(ctx, (q3,), 2)
        B0 = three_point_map(q3, z1, z2).inverse()
    C0 = _post(B0, S)
    if C0.den.degree != 0:
        raise AssertionError("pole alignment failed for %s" % R)
    return A0, B0, C0


def _witness_x3x2(R, prof):
    """Witness onto x^3 + x^2 (index pattern (2,3), both points rational)."""
    ctx = R.ctx
    A0, B0, C0 = _reduce_to_poly(R, prof)
    a = C0.num.coeff(3)
    b = C0.num.coeff(2)
    if not (a.key and b.key) or C0.num.coeff(1).key or C0.num.coeff(0).key:
        raise AssertionError("unexpected normal form %s" % C0)
    s = b / a
    t = a * a / b ** 3
    B = _scale(ctx, t).compose(B0)
    A = A0.compose(_scale(ctx, s))
    return PairAction(B, A.inverse())


def _witness_char3_wild(R, prof):
    """Witness onto x^3 + x or x^3 + sigma x (single wild point, char 3).

    Returns (case, pair); the case depends on whether the linear
    coefficient of the reduced polynomial is a square times the cubic
    one.
    """
    ctx = R.ctx
    A0, B0, C0 = _reduce_to_poly(R, prof)
    a = C0.num.coeff(3)
    cc = C0.num.coeff(1)
    d = C0.num.coeff(0)
    if not (a.key and cc.key) or C0.num.coeff(2).key:
        raise AssertionError("unexpected normal form %s" % C0)
    B1 = Moebius(ctx, ctx.one, -d, ctx.zero, ctx.one)
    ratio = cc / a
    if is_square(ratio):
        case, e = "Cubic3_X3X", ctx.one
    else:
        case, e = "Cubic3_X3SigmaX", canonical_sigma(ctx)
    s = sqrt(ratio / e)
    t = ctx.one / (a * s ** 3)
    B = _scale(ctx, t).compose(B1).compose(B0)
    A = A0.compose(_scale(ctx, s))
    return case, PairAction(B, A.inverse())


def _cube_root(v):
    """Some y with y^3 = v; ValueError if v is not a cube."""
    ctx = v.ctx
    if v.key == 0:
        return v
    m = ctx.q - 1
    if m % 3:
        return v ** pow(3, -1, m)
    if (v ** (m // 3)).key != 1:
        raise ValueError("%r is not a cube" % (v,))
    if m % 9:
        return v ** pow(3, -1, m // 3)
    if ctx.elements is None:
        raise ValueError("cube roots in %s need an interned field" % ctx.name)
    for y in ctx:
        if (y ** 3) == v:
            return y
    raise AssertionError("cube promised but no root found")


def _witness_char2_iv(R, prof):
    """Witness onto (x^3 + theta^k)/x (single wild point, char 2).

    Returns (k, pair).  k is the power of the canonical noncube that
    represents the cubic residue class of the reduced constant term.
    """
    ctx = R.ctx
    P = prof.points[0].point
    Q = prof.points[0].branch
    Pp = next(x for x in proj_points(ctx)
              if proj_key(R(x)) == proj_key(Q) and proj_key(x) != proj_key(P))
    w2 = _first_points(ctx, (P, Pp), 1)[0]
    A0 = three_point_map(P, Pp, w2)
    S = _precompose(R, A0)
    z1, z2 = _first_points(ctx, (Q,), 2)
    B0 = three_point_map(Q, z1, z2).inverse()
    C0 = _post(B0, S)
    den = C0.den
    if den.degree != 1 or den.coeff(0).key:
        raise AssertionError("pole alignment failed for %s" % R)
    a3 = C0.num.coeff(3)
    a1 = C0.num.coeff(1)
    a0 = C0.num.coeff(0)
    if not (a3.key and a0.key) or C0.num.coeff(2).key:
        raise AssertionError("unexpected normal form %s" % C0)
    B1 = Moebius(ctx, ctx.one, a1, ctx.zero, ctx.one)
    c = a0 / a3
    k = 0
    if (ctx.q - 1) % 3 == 0:
        omega = canonical_theta(ctx) ** ((ctx.q - 1) // 3)
        chi = c ** ((ctx.q - 1) // 3)
        if chi == omega:
            k = 1
        elif chi == omega * omega:
            k = 2
        elif chi.key != 1:
            raise AssertionError("cubic character out of range")
    theta_k = ctx.one if k == 0 else canonical_theta(ctx) ** k
    s = _cube_root(c / theta_k)
    t = ctx.one / (a3 * s * s)
    B = _scale(ctx, t).compose(B1).compose(B0)
    A = A0.compose(_scale(ctx, s))
    return k, PairAction(B, A.inverse())


def _witness_quad_sep_char2(R, prof, T):
    """Witness onto (x^2+1)/x (separable quadratic, char 2).

    The single ramification point goes to 1; a two-point fiber off the
    branch value supplies the pair sent to {0, infinity}.
    """
    ctx = R.ctx
    P = prof.points[0].point
    qkey = proj_key(prof.points[0].branch)
    fibers = {}
    for x in proj_points(ctx):
        fibers.setdefault(proj_key(R(x)), []).append(x)
    for vkey in sorted(fibers):
        pts = fibers[vkey]
        if vkey == qkey or len(pts) != 2:
            continue
        for u, w in ((pts[0], pts[1]), (pts[1], pts[0])):
            A0 = map_triple((ctx.one, ctx.zero, INF), (P, u, w))
            pair = _aligned_pair(R, T, A0)
            if pair is not None:
                return pair
    raise AssertionError("fiber alignment failed for %s" % R)


def _witness_char2_v(R, prof):
    """Witness onto (x^3+c)/(x+c) (two rational double points, char 2).

    c is the cross-ratio invariant of the two ramification points and
    their further preimages, normalized so the four distinguished
    points of the target are infinity, c, 1, 0.  Returns (c, pair).
    """
    ctx = R.ctx
    pa, pb = (pt.point for pt in prof.points)
    qa, qb = (pt.branch for pt in prof.points)
    pap = next(x for x in proj_points(ctx)
               if proj_key(R(x)) == proj_key(qa)
               and proj_key(x) != proj_key(pa))
    pbp = next(x for x in proj_points(ctx)
               if proj_key(R(x)) == proj_key(qb)
               and proj_key(x) != proj_key(pb))
    rho = cross_ratio(pa, pap, pb, pbp)
    c = rho / (ctx.one + rho)
    if c * c == c:
        raise AssertionError("degenerate fiber cross-ratio for %s" % R)
    T = canonical_rep(ClassLabel("Cubic2_v", {"c": c}), ctx)
    for m1, m2, m3 in ((pa, pap, pb), (pb, pbp, pa)):
        A0 = map_triple((INF, c, ctx.one), (m1, m2, m3))
        pair = _aligned_pair(R, T, A0)
        if pair is not None:
            return c, pair
    raise AssertionError("fiber alignment failed for %s" % R)


def _witness_char2_vi(R, prof):
    """Witness onto the conjugate-double-point form for char 2.

    The two conjugate ramification points and their further preimages
    have a Galois-stable cross-ratio; its base-field value yields the
    parameter b with cr = 1/(b+1)^2.  Returns (b, pair).
    """
    ctx = R.ctx
    n = ctx.n
    top, em = extend(ctx, 2)
    rho, rhoc = (pt.point for pt in prof.points)
    q_rho = prof.points[0].branch
    Re = R.lift(em)
    rhop = next(x for x in proj_points(top)
                if proj_key(Re(x)) == proj_key(q_rho)
                and proj_key(x) != proj_key(rho))
    rhopc = frobenius(rhop, n)
    cr = em.preimage(cross_ratio(rho, rhop, rhoc, rhopc))
    b = ctx.one + sqrt(ctx.one / cr)
    if b * b == b:
        raise AssertionError("degenerate fiber cross-ratio for %s" % R)
    T = canonical_rep(ClassLabel("Cubic2_vi", {"b": b}), ctx)
    tau = canonical_tau(ctx)
    tauc = frobenius(tau, n)
    be = em(b)
    for m1, m2, m3 in ((rho, rhop, rhoc), (rhoc, rhopc, rho)):
        A0 = map_triple((tau, tau + be, tauc), (m1, m2, m3)).descend(em)
        if A0 is None:
            continue
        pair = _aligned_pair(R, T, A0)
        if pair is not None:
            return b, pair
    raise AssertionError("conjugate fiber alignment failed for %s" % R)


# ---------------------------------------------------------------------------
# four-point invariants


def _embed_point(P, em):
    return INF if P is INF else em(P)


def _four_point_label(R, prof):
    ctx = R.ctx
    degs = [pt.defining_degree for pt in prof.points]
    m = math.lcm(*degs)
    if m == 1:
        pts = [pt.point for pt in prof.points]
        brs = [pt.branch for pt in prof.points]
        ctxm = ctx
    else:
        ctxm = extend(ctx, m)[0]
        pts = []
        brs = []
        for pt in prof.points:
            if pt.defining_degree == 1:
                em = extend(ctx, m)[1]
            else:
                em = embed(extend(ctx, pt.defining_degree)[0], ctxm)
            pts.append(_embed_point(pt.point, em))
            brs.append(_embed_point(pt.branch, em))
    lam = cross_ratio(*pts)
    mu = cross_ratio(*brs)
    best = None
    for M in s_group_maps(ctxm):
        lam2, mu2 = M(lam), M(mu)
        key = (proj_key(lam2), proj_key(mu2))
        if best is None or key < best[0]:
            best = (key, lam2, mu2)
    lam_c, mu_c = best[1], best[2]
    mu_alt = lam_c ** 4 / mu_c
    counts = {}
    for d in degs:
        counts[d] = counts.get(d, 0) + 1
    pattern = []
    for d in sorted(counts):
        if counts[d] % d:
            raise AssertionError("Galois orbit of size %d broken" % d)
        pattern.extend([d] * (counts[d] // d))
    if ctx.p >= 5 and not lambda_mu_relation(lam_c, mu_c):
        raise AssertionError("cross-ratio pair violates the branch relation")
    return ClassLabel("FourPoint", {
        "lambda": lam_c, "mu": mu_c, "mu_alt": mu_alt,
        "pattern": tuple(pattern),
    })


def four_point_invariants(R):
    """The FourPoint label of a cubic with four ramification points.

    lambda is the cross-ratio of the four ramification points inside
    their compositum field, mu the cross-ratio of the branch values in
    the same point order, reported at the joint minimum over the size-6
    cross-ratio symmetry group (so the label does not depend on any
    ordering choice).  mu_alt = lambda^4 / mu is the other root of the
    branch relation, and pattern lists the degrees of the closed points
    carrying the ramification.  Equivalent expressions get equal
    labels.
    """
    if R.degree != 3:
        raise ValueError("four-point invariants need a cubic")
    if not is_separable(R):
        raise ValueError("inseparable cubic has no four-point invariants")
    prof = ramification_profile(R)
    if prof.indices != (2, 2, 2, 2):
        raise ValueError("expression does not have four ramification points")
    return _four_point_label(R, prof)


# ---------------------------------------------------------------------------
# classification


def classify_quadratic(R):
    """Classify a quadratic expression: returns (label, witness).

    Odd characteristic splits on whether the two ramification points
    are rational; characteristic 2 splits on separability.  The witness
    maps R onto canonical_rep(label, R.ctx) and is verified exactly.
    """
    if R.degree != 2:
        raise ValueError("classify_quadratic needs a degree-2 expression")
    ctx = R.ctx
    if ctx.p == 2:
        if not is_separable(R):
            label = ClassLabel("Quad_X2_Insep")
            pair = _witness_power_insep(R, 2)
        else:
            label = ClassLabel("Quad_SepChar2")
            prof = ramification_profile(R)
            pair = _witness_quad_sep_char2(R, prof, canonical_rep(label, ctx))
    else:
        prof = ramification_profile(R)
        degs = sorted(pt.defining_degree for pt in prof.points)
        if degs == [1, 1]:
            label = ClassLabel("Quad_X2")
            pair = _witness_power(R, prof, canonical_rep(label, ctx))
        elif degs == [2, 2]:
            label = ClassLabel("Quad_TwoPointTwist")
            pair = _witness_two_point_conj(R, prof, canonical_rep(label, ctx))
        else:
            raise AssertionError("impossible quadratic profile %s" % degs)
    return label, Witness(pair, R, canonical_rep(label, ctx))


def classify_cubic(R):
    """Classify a cubic expression: returns (label, witness or None).

    Expressions with four ramification points get a FourPoint label
    built from cross-ratio invariants and no witness; every other label
    comes with a verified witness onto its canonical representative.
    """
    if R.degree != 3:
        raise ValueError("classify_cubic needs a degree-3 expression")
    ctx = R.ctx
    p = ctx.p
    if p == 3 and not is_separable(R):
        label = ClassLabel("Cubic3_X3_Insep")
        pair = _witness_power_insep(R, 3)
        return label, Witness(pair, R, canonical_rep(label, ctx))
    prof = ramification_profile(R)
    idx = prof.indices
    if idx == (2, 2, 2, 2):
        return _four_point_label(R, prof), None
    if p >= 5:
        if idx == (3, 3):
            degs = sorted(pt.defining_degree for pt in prof.points)
            if degs == [1, 1]:
                label = ClassLabel("Cubic_X3")
                pair = _witness_power(R, prof, canonical_rep(label, ctx))
            else:
                label = ClassLabel("Cubic_TwoPointTwist")
                pair = _witness_two_point_conj(
                    R, prof, canonical_rep(label, ctx))
        elif idx == (2, 2, 3):
            degs = sorted(pt.defining_degree for pt in prof.points
                          if pt.index == 2)
            if degs == [1, 1]:
                label = ClassLabel("Cubic_Dickson")
                pair = _witness_dickson(R, prof, canonical_rep(label, ctx))
            else:
                label = ClassLabel("Cubic_DicksonTwist")
                pair = _witness_dickson_conj(
                    R, prof, canonical_rep(label, ctx))
        else:
            raise AssertionError("impossible cubic profile %s" % (idx,))
    elif p == 3:
        if idx == (2, 3):
            label = ClassLabel("Cubic3_X3X2")
            pair = _witness_x3x2(R, prof)
        elif idx == (3,):
            case, pair = _witness_char3_wild(R, prof)
            label = ClassLabel(case)
        else:
            raise AssertionError("impossible cubic profile %s" % (idx,))
    else:
        if idx == (3, 3):
            degs = sorted(pt.defining_degree for pt in prof.points)
            if degs == [1, 1]:
                label = ClassLabel("Cubic2_i")
                pair = _witness_power(R, prof, canonical_rep(label, ctx))
            else:
                label = ClassLabel("Cubic2_ii")
                pair = _witness_two_point_conj(
                    R, prof, canonical_rep(label, ctx))
        elif idx == (2, 3):
            label = ClassLabel("Cubic2_iii")
            pair = _witness_x3x2(R, prof)
        elif idx == (2,):
            k, pair = _witness_char2_iv(R, prof)
            label = ClassLabel("Cubic2_iv", {"k": k})
        elif idx == (2, 2):
            degs = sorted(pt.defining_degree for pt in prof.points)
            if degs == [1, 1]:
                c, pair = _witness_char2_v(R, prof)
                label = ClassLabel("Cubic2_v", {"c": c})
            else:
                b, pair = _witness_char2_vi(R, prof)
                label = ClassLabel("Cubic2_vi", {"b": b})
        else:
            raise AssertionError("impossible cubic profile %s" % (idx,))
    return label, Witness(pair, R, canonical_rep(label, ctx))


def classify(R):
    """Dispatch on degree: quadratics and cubics only."""
    if R.degree == 2:
        return classify_quadratic(R)
    if R.degree == 3:
        return classify_cubic(R)
    raise ValueError("can only classify quadratic and cubic expressions")


def are_equivalent(R, R2):
    """Search for a pair with act(pair, R) = R2; None when inequivalent.

    For each source candidate A the target-side B is forced by three
    probe values, so the scan is linear in the size of the Moebius
    group.  Probe points run over a small extension when the base line
    is too short to guarantee three distinct values; a forced B must
    then descend to the base field.  Raises ValueError when the group
    is too large to enumerate.
    """
    if R.ctx is not R2.ctx:
        raise ValueError("expressions live over different fields")
    if R.degree != R2.degree:
        raise ValueError("expressions have different degrees")
    ctx = R.ctx
    if R == R2:
        idm = identity(ctx)
        return PairAction(idm, idm)
    top, em = _probe_field(ctx, 2 * R.degree + 1)
    R2e = R2 if em is None else R2.lift(em)
    probes = list(proj_points(top))
    idm = identity(ctx)
    for A in enumerate_pgl2(ctx):
        S = act(PairAction(idm, A), R)
        Se = S if em is None else S.lift(em)
        svals = []
        tvals = []
        for P in probes:
            v = Se(P)
            if any(proj_key(v) == proj_key(u) for u in svals):
                continue
            svals.append(v)
            tvals.append(R2e(P))
            if len(svals) == 3:
                break
        if len(svals) < 3:
            continue
        if any(proj_key(tvals[i]) == proj_key(tvals[j])
               for i in range(3) for j in range(i + 1, 3)):
            continue
        B = map_triple(tuple(svals), tuple(tvals))
        if em is not None:
            B = B.descend(em)
            if B is None:
                continue
        if _post(B, S) == R2:
            return PairAction(B, A)
    return None


def label_json(label, ctx, witness=None):
    """A JSON-ready dict describing a classification result."""
    params = {}
    if label.case != "FourPoint":
        for k, v in label.params:
            params[k] = v if isinstance(v, int) else str(v)
    out = {
        "case": label.case,
        "params": params,
        "sigma": str(canonical_sigma(ctx)),
    }
    if label.case == "Cubic2_iv" and label.param("k") and (ctx.q - 1) % 3 == 0:
        out["theta"] = str(canonical_theta(ctx))
    if witness is not None:
        out["witness"] = {"B": str(witness.B), "A": str(witness.A)}
    if label.case == "FourPoint":
        out["invariants"] = {
            "lambda": proj_str(label.param("lambda")),
            "mu": proj_str(label.param("mu")),
            "mu_alt": proj_str(label.param("mu_alt")),
            "pattern": list(label.param("pattern")),
        }
    return out
