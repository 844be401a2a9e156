"""Ramification data of quadratic and cubic expressions over F_q.

Finite ramification points are exactly the roots of the wronskian
numerator g'h - gh' (in every characteristic: at an unramified point the
wronskian has vanishing order e - 1 = 0, at a tame point e - 1 >= 1, at a
wild point >= e).  The point at infinity is probed directly.  Indices are
computed by moving the point and its branch value to 0 with coordinate
swaps and counting the vanishing order of the numerator, which is
uniform across tame and wild cases.
"""

from __future__ import annotations

from .ffield import degree_over, extend
from .poly import factor_degree_pattern, roots, roots_in
from .ratexpr import INF, RatExpr, expr, proj_key


class RamPoint:
    """One geometric ramification point with its index and branch value.

    point and branch live in F_{q^d} for the exact degree d of the point
    over the coefficient field (d = 1 for the point at infinity).
    """

    __slots__ = ("point", "index", "branch", "defining_degree")

    def __init__(self, point, index, branch, defining_degree):
        self.point = point
        self.index = index
        self.branch = branch
        self.defining_degree = defining_degree

    def sort_key(self):
        return (self.defining_degree, proj_key(self.point))

    def __eq__(self, other):
        if not isinstance(other, RamPoint):
            return NotImplemented
        return (proj_key(self.point) == proj_key(other.point)
                and self.index == other.index
                and proj_key(self.branch) == proj_key(other.branch)
                and self.defining_degree == other.defining_degree)

    def __repr__(self):
        return "RamPoint(%s, index %d, branch %s, degree %d)" % (
            "inf" if self.point is INF else self.point,
            self.index,
            "inf" if self.branch is INF else self.branch,
            self.defining_degree)


class RamProfile:
    """All ramification points of an expression, or the inseparable tag.

    For a separable expression, points are sorted by (field degree,
    infinity first, element code) and indices is the sorted multiset of
    their indices.  An inseparable expression gets the distinguished
    everywhere-ramified profile: separable False, no listed points.
    """

    __slots__ = ("separable", "points", "indices")

    def __init__(self, separable, points=()):
        self.separable = separable
        self.points = tuple(sorted(points, key=RamPoint.sort_key))
        self.indices = tuple(sorted(p.index for p in self.points))

    @property
    def everywhere_ramified(self):
        return not self.separable

    def to_records(self):
        out = []
        for p in self.points:
            out.append({
                "point": "inf" if p.point is INF else str(p.point),
                "field_degree": p.defining_degree,
                "index": p.index,
                "branch_point": "inf" if p.branch is INF else str(p.branch),
            })
        return out

    def __repr__(self):
        if not self.separable:
            return "RamProfile(inseparable)"
        return "RamProfile(%s)" % (list(self.points),)


def wronskian(R):
    """The numerator g'h - gh' of the derivative of R = g/h."""
    return R.num.derivative() * R.den - R.num * R.den.derivative()


def is_separable(R):
    """Whether R defines a separable covering (nonzero derivative)."""
    if R.degree < 1:
        raise ValueError("separability concerns nonconstant expressions")
    return not wronskian(R).is_zero


def _vanishing_order(f):
    for i, c in enumerate(f.coeffs):
        if c.key:
            return i
    raise AssertionError("zero polynomial has no vanishing order")


def ram_index(R, P):
    """The local index e_R(P): vanishing order of R - R(P) at P.

    P and the branch value are moved to 0 by x -> x + P or x -> 1/x
    swaps on source and target, after which the order is read off the
    numerator.  Returns 1 at unramified points.
    """
    ctx = R.ctx
    if P is INF:
        R1 = R.compose(expr(ctx, (1,), (0, 1)))
    else:
        R1 = R.compose(expr(ctx, (P, 1)))
    Q = R1(ctx.zero)
    if Q is INF:
        R2 = RatExpr(R1.den, R1.num)
    else:
        R2 = R1 - Q
    return _vanishing_order(R2.num)


def ramification_profile(R):
    """All geometric ramification points of a quadratic or cubic.

    Points are realized in F_{q^d} for the exact degree d at which they
    live (d <= 4); each carries its index and branch value.  Inseparable
    input yields the distinguished everywhere-ramified profile.
    """
    if R.degree not in (2, 3):
        raise ValueError("degree %d out of scope" % R.degree)
    if not is_separable(R):
        return RamProfile(False)
    ctx = R.ctx
    W = wronskian(R)
    points = []
    e = ram_index(R, INF)
    if e >= 2:
        points.append(RamPoint(INF, e, R(INF), 1))
    degrees = sorted({d for d, _ in factor_degree_pattern(W)})
    for d in degrees:
        if d == 1:
            lifted = R
            rs = [root for root, _ in roots(W)]
        else:
            top, emb = extend(ctx, d)
            lifted = R.lift(emb)
            rs = [root for root, _ in roots_in(W, emb)
                  if degree_over(root, ctx) == d]
        for root in rs:
            e = ram_index(lifted, root)
            if e < 2:
                raise AssertionError("wronskian root with index 1")
            points.append(RamPoint(root, e, lifted(root), d))
    return RamProfile(True, points)


def hurwitz_check(R):
    """Compare 2 deg - 2 against the sum of (index - 1).

    Returns one of "holds_with_equality", "holds_strict", "violated";
    the equality criterion (no index divisible by the characteristic) is
    recomputed independently and must agree with the numeric comparison.
    """
    if not is_separable(R):
        raise ValueError("the inequality concerns separable expressions")
    prof = ramification_profile(R)
    lhs = 2 * R.degree - 2
    rhs = sum(e - 1 for e in prof.indices)
    if rhs > lhs:
        return "violated"
    tame = all(e % R.ctx.p for e in prof.indices)
    if tame != (rhs == lhs):
        raise AssertionError("equality criterion disagrees with the count")
    return "holds_with_equality" if rhs == lhs else "holds_strict"
