"""Rational expressions g(x)/h(x) over a finite field, in lowest terms.

Every expression is normalized on construction: numerator and
denominator are made coprime and the denominator monic, so equal maps
have identical coefficient tuples and expressions can be hashed,
compared and sorted.  Evaluation is projective, with INF standing for
the point at infinity of P^1.
"""

from __future__ import annotations

from .ffield import DESK_SCALE_BOUND, Fel
from .poly import Poly, _mk, _trim, divmod_poly, gcd_monic, map_coeffs, poly_x


class _Inf:
    """The point at infinity; a singleton."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Inf()


def proj_key(P):
    """Sort key on P^1: infinity first, then elements in code order."""
    if P is INF:
        return (0, 0)
    return (1, P.key)


def proj_points(ctx):
    """All points of P^1(F_q) in canonical order: inf, then the field."""
    yield INF
    yield from ctx


def proj_str(P):
    return "inf" if P is INF else str(P)


class RatExpr:
    """A rational expression in lowest terms with monic denominator."""

    __slots__ = ("ctx", "num", "den", "_key")

    def __init__(self, num, den):
        if num.ctx is not den.ctx:
            raise TypeError("numerator and denominator over different fields")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        g = gcd_monic(num, den)
        if (g.degree or 0) > 0:
            num = divmod_poly(num, g)[0]
            den = divmod_poly(den, g)[0]
        lc = den.coeffs[-1]
        if lc.key != 1:
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        self.ctx = num.ctx
        self.num = num
        self.den = den
        self._key = None

    @property
    def key(self):
        k = self._key
        if k is None:
            k = (self.num.coeff_keys, self.den.coeff_keys)
            self._key = k
        return k

    @property
    def degree(self):
        """max(deg num, deg den); the constant zero map has degree 0."""
        nd = self.num.degree
        if nd is None:
            return self.den.degree
        return max(nd, self.den.degree)

    @property
    def is_constant(self):
        return self.degree == 0

    def __call__(self, P):
        """Projective evaluation at P in the coefficient field or at INF."""
        if P is INF:
            nd = self.num.degree
            dd = self.den.degree
            if nd is None:
                return self.ctx.zero
            if nd > dd:
                return INF
            if nd < dd:
                return self.ctx.zero
            return self.num.coeffs[-1]
        nv = self.num(P)
        dv = self.den(P)
        if dv.key:
            return nv / dv
        if nv.key:
            return INF
        raise AssertionError("common root survived normalization")

    def compose(self, S):
        """self(S(x)) for a nonconstant S over the same field."""
        if S.ctx is not self.ctx:
            raise TypeError("composition across different fields")
        if S.is_constant:
            raise ValueError("composition with a constant expression")
        r = self.degree
        npow = [_one_poly(self.ctx)]
        dpow = [_one_poly(self.ctx)]
        for _ in range(r):
            npow.append(npow[-1] * S.num)
            dpow.append(dpow[-1] * S.den)
        num = Poly(self.ctx, ())
        den = Poly(self.ctx, ())
        for i in range(r + 1):
            c = self.num.coeff(i)
            if c.key:
                num = num + c * (npow[i] * dpow[r - i])
            c = self.den.coeff(i)
            if c.key:
                den = den + c * (npow[i] * dpow[r - i])
        return RatExpr(num, den)

    def lift(self, emb):
        """The same expression over the extension reached by emb."""
        return RatExpr(map_coeffs(self.num, emb), map_coeffs(self.den, emb))

    def _lift_operand(self, other):
        if isinstance(other, RatExpr):
            if other.ctx is not self.ctx:
                raise TypeError("expressions over different fields")
            return other
        if isinstance(other, (int, Fel)):
            return RatExpr(Poly(self.ctx, (other,)), _one_poly(self.ctx))
        return None

    def __add__(self, other):
        other = self._lift_operand(other)
        if other is None:
            return NotImplemented
        return RatExpr(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatExpr(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift_operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift_operand(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift_operand(other)
        if other is None:
            return NotImplemented
        return RatExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift_operand(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero expression")
        return RatExpr(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift_operand(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if self.num.is_zero:
                raise ZeroDivisionError("zero expression to a negative power")
            return RatExpr(self.den ** -e, self.num ** -e)
        return RatExpr(self.num ** e, self.den ** e)

    def __eq__(self, other):
        if not isinstance(other, RatExpr):
            return NotImplemented
        return self.ctx is other.ctx and self.key == other.key

    def __hash__(self):
        return hash((self.ctx.uid, self.key))

    def __str__(self):
        ns = str(self.num)
        if self.den.degree == 0:
            return ns
        ds = str(self.den)
        if "+" in ns:
            ns = "(%s)" % ns
        if "+" in ds:
            ds = "(%s)" % ds
        return "%s/%s" % (ns, ds)

    def __repr__(self):
        return "RatExpr(%s, %s)" % (self.ctx.name, self)


def _one_poly(ctx):
    return _mk(ctx, (ctx.one,))


def identity_expr(ctx):
    return RatExpr(poly_x(ctx), _one_poly(ctx))


def constant_expr(a):
    """The constant map with value a (a Fel)."""
    return RatExpr(_mk(a.ctx, _trim([a])), _one_poly(a.ctx))


def expr(ctx, num_coeffs, den_coeffs=(1,)):
    """Expression from little-endian coefficient lists (ints or elements)."""
    return RatExpr(Poly(ctx, num_coeffs), Poly(ctx, den_coeffs))


def make(num, den):
    """Normalized rational expression num/den (two Poly over one field)."""
    return RatExpr(num, den)


def eval_proj(R, P):
    """Projective evaluation of R at a field element or INF."""
    return R(P)


def count_expressions(ctx, r):
    """Number of rational expressions of degree exactly r >= 1."""
    if r < 1:
        raise ValueError("degree must be at least 1")
    q = ctx.q
    return q ** (2 * r - 1) * (q * q - 1)


def count_coprime_monic_pairs(ctx, r, s):
    """Number of coprime pairs of monic polynomials of degrees (r, s)."""
    q = ctx.q
    if r == 0 or s == 0:
        return q ** (r + s)
    return q ** (r + s - 1) * (q - 1)


def _poly_from_code(ctx, code, width, top=None):
    els = ctx.elements
    q = ctx.q
    cs = []
    for _ in range(width):
        k = code % q
        cs.append(els[k] if els is not None else ctx.from_key(k))
        code //= q
    if top is not None:
        cs.append(top)
    return _mk(ctx, _trim(cs))


def enumerate_expressions(ctx, r):
    """All expressions of degree exactly r, in a fixed documented order.

    Denominators are monic and run by (degree, coefficient code);
    numerators run by coefficient code, restricted to exact degree r
    while the denominator degree is below r.  Every expression of
    degree r appears exactly once, already in lowest terms.
    """
    if r < 1:
        raise ValueError("degree must be at least 1")
    if count_expressions(ctx, r) > DESK_SCALE_BOUND:
        raise ValueError("enumeration of %d expressions exceeds the "
                         "desk-scale bound" % count_expressions(ctx, r))
    return _enumerate_expressions(ctx, r)


def _enumerate_expressions(ctx, r):
    q = ctx.q
    one = ctx.one
    for dd in range(r + 1):
        for dk in range(q ** dd):
            den = _poly_from_code(ctx, dk, dd, top=one)
            if dd == r:
                lo, hi = 1, q ** (r + 1)
            else:
                lo, hi = q ** r, q ** (r + 1)
            for nk in range(lo, hi):
                num = _poly_from_code(ctx, nk, r + 1)
                if gcd_monic(num, den).degree == 0:
                    rx = RatExpr.__new__(RatExpr)
                    rx.ctx = ctx
                    rx.num = num
                    rx.den = den
                    rx._key = None
                    yield rx
