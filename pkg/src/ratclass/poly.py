"""Dense univariate polynomials over one finite field.

Coefficients are stored little-endian with trailing zeros trimmed, so
the zero polynomial is the empty tuple and its degree is None (a
distinguished marker, deliberately not -1).  Root finding returns every
root with multiplicity, sorted by element code: small fields are swept
in code order, large ones go through x^q - x splitting and a seeded
equal-degree split, and the two paths agree wherever both run.
"""

from __future__ import annotations

import random

from .ffield import Fel, frobenius

# seed for the equal-degree splitting walk; results do not depend on
# it, only the internal branching order does
SPLIT_SEED = 0


class Poly:
    """Polynomial over a fixed field context; immutable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs=()):
        cs = []
        for c in coeffs:
            if isinstance(c, int):
                c = ctx.scalar(c)
            elif c.ctx is not ctx:
                raise TypeError("coefficient of %s in a polynomial over %s" %
                                (c.ctx.name, ctx.name))
            cs.append(c)
        while cs and cs[-1].key == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1].key == 1

    def coeff(self, i):
        """Coefficient of x^i (zero beyond the stored width)."""
        return self.coeffs[i] if i < len(self.coeffs) else self.ctx.zero

    def __call__(self, a):
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ctx is not self.ctx:
                raise TypeError("polynomials over different fields")
            return other
        if isinstance(other, (int, Fel)):
            return Poly(self.ctx, (other,))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = cs[i] + c
        return _mk(self.ctx, _trim(cs))

    __radd__ = __add__

    def __neg__(self):
        return _mk(self.ctx, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fel)):
            c = other if isinstance(other, Fel) else self.ctx.scalar(other)
            if c.key == 0:
                return _mk(self.ctx, ())
            return _mk(self.ctx, tuple(a * c for a in self.coeffs))
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _mk(self.ctx, ())
        z = self.ctx.zero
        out = [z] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai.key:
                for j, bj in enumerate(b):
                    if bj.key:
                        out[i + j] = out[i + j] + ai * bj
        return _mk(self.ctx, _trim(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fel)):
            c = other if isinstance(other, Fel) else self.ctx.scalar(other)
            return self * c.inverse()
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = _mk(self.ctx, (self.ctx.one,))
        cur = self
        while e:
            if e & 1:
                result = result * cur
            cur = cur * cur
            e >>= 1
        return result

    def derivative(self):
        cs = [i * c for i, c in enumerate(self.coeffs)][1:]
        return _mk(self.ctx, _trim(cs))

    def monic(self):
        if self.is_zero or self.coeffs[-1].key == 1:
            return self
        return self * self.coeffs[-1].inverse()

    @property
    def coeff_keys(self):
        return tuple(c.key for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx is other.ctx and self.coeff_keys == other.coeff_keys

    def __hash__(self):
        return hash((self.ctx.uid, self.coeff_keys))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.key == 0:
                continue
            cs = str(c)
            if i == 0:
                parts.append(cs)
                continue
            var = "x" if i == 1 else "x^%d" % i
            if c.key == 1:
                parts.append(var)
            elif "+" in cs:
                parts.append("(%s)%s" % (cs, var))
            else:
                parts.append(cs + var)
        return "+".join(parts)

    def __repr__(self):
        return "Poly(%s, %s)" % (self.ctx.name, self)


def _mk(ctx, coeffs):
    p = Poly.__new__(Poly)
    p.ctx = ctx
    p.coeffs = tuple(coeffs)
    return p


def _trim(cs):
    n = len(cs)
    while n and cs[n - 1].key == 0:
        n -= 1
    return cs[:n]


def poly_x(ctx):
    """The polynomial x."""
    return _mk(ctx, (ctx.zero, ctx.one))


def divmod_poly(f, g):
    """Quotient and remainder of f by a nonzero g."""
    if g.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    ctx = f.ctx
    if f.degree is None or f.degree < g.degree:
        return _mk(ctx, ()), f
    inv = g.coeffs[-1].inverse()
    rem = list(f.coeffs)
    dg = g.degree
    qcs = [ctx.zero] * (len(rem) - dg)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c.key == 0:
            continue
        c = c * inv
        qcs[i - dg] = c
        for j in range(dg + 1):
            rem[i - dg + j] = rem[i - dg + j] - c * g.coeffs[j]
    return _mk(ctx, _trim(qcs)), _mk(ctx, _trim(rem[:dg]))


def gcd_monic(f, g):
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    while not g.is_zero:
        f, g = g, divmod_poly(f, g)[1]
    return f.monic()


def map_coeffs(f, emb):
    """Push a polynomial through a field embedding."""
    return _mk(emb.dst, _trim([emb(c) for c in f.coeffs]))


def pth_root(f):
    """The p-th root of a polynomial with zero derivative."""
    ctx = f.ctx
    p = ctx.p
    cs = []
    for i, c in enumerate(f.coeffs):
        if i % p:
            if c.key:
                raise ValueError("polynomial is not a p-th power")
        else:
            cs.append(frobenius(c, ctx.n - 1))
    return _mk(ctx, _trim(cs))


def radical(f):
    """Product of the distinct monic irreducible factors of f."""
    if f.is_zero:
        raise ValueError("the zero polynomial has no radical")
    f = f.monic()
    if f.degree == 0:
        return f
    d = f.derivative()
    if d.is_zero:
        return radical(pth_root(f))
    g = gcd_monic(f, d)
    if g.degree == 0:
        return f
    s = divmod_poly(f, g)[0]
    rg = radical(g)
    return s * divmod_poly(rg, gcd_monic(rg, s))[0]


def _pow_mod(base, e, mod):
    q, result = divmod_poly(_mk(base.ctx, (base.ctx.one,)), mod)
    cur = divmod_poly(base, mod)[1]
    while e:
        if e & 1:
            result = divmod_poly(result * cur, mod)[1]
        cur = divmod_poly(cur * cur, mod)[1]
        e >>= 1
    return result


def _squarefree_degree_pattern(v):
    """Distinct-degree split of a squarefree monic polynomial."""
    ctx = v.ctx
    x = poly_x(ctx)
    out = []
    h = divmod_poly(x, v)[1]
    d = 0
    while v.degree:
        d += 1
        if 2 * d > v.degree:
            out.append((v.degree, 1))
            break
        h = _pow_mod(h, ctx.q, v)
        g = gcd_monic(v, h - x)
        if g.degree:
            out.append((d, g.degree // d))
            v = divmod_poly(v, g)[0]
            if v.degree == 0:
                break
            h = divmod_poly(h, v)[1]
    return out


def factor_degree_pattern(f):
    """Degrees of the monic irreducible factors of f, with multiplicity.

    Returns a sorted list of (degree, count) pairs; count totals the
    multiplicities of all irreducible factors of that degree, so that
    sum(d * count) equals deg f.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial has no factor pattern")
    counts = {}
    f = f.monic()
    # each pass strips one copy of every irreducible still dividing f
    while f.degree:
        r = radical(f)
        for d, c in _squarefree_degree_pattern(r):
            counts[d] = counts.get(d, 0) + c
        f = divmod_poly(f, r)[0]
    return sorted(counts.items())


def _synthetic_div(f, a):
    """f = (x - a) q + r by Horner; returns (q, r)."""
    ctx = f.ctx
    qcs = [ctx.zero] * (len(f.coeffs) - 1)
    acc = ctx.zero
    for i in range(len(f.coeffs) - 1, 0, -1):
        acc = acc * a + f.coeffs[i]
        qcs[i - 1] = acc
    r = acc * a + f.coeffs[0]
    return _mk(ctx, _trim(qcs)), r


def _multiplicity(f, a):
    m = 0
    while True:
        q, r = _synthetic_div(f, a)
        if r.key:
            return m
        m += 1
        f = q
        if f.degree == 0:
            return m


def roots(f):
    """All roots of f in its own field, as (root, multiplicity) pairs
    sorted by element code."""
    if f.is_zero:
        raise ValueError("every element is a root of the zero polynomial")
    if f.degree == 0:
        return []
    ctx = f.ctx
    if ctx.elements is not None:
        return [(a, _multiplicity(f, a)) for a in ctx.elements
                if f(a).key == 0]
    return _roots_by_splitting(f)


def roots_in(f, emb):
    """Roots of f in the extension field reached by emb."""
    return roots(map_coeffs(f, emb))


def _roots_by_splitting(f):
    ctx = f.ctx
    x = poly_x(ctx)
    fm = f.monic()
    h = _pow_mod(x, ctx.q, fm)
    g = gcd_monic(fm, h - x)
    rng = random.Random(SPLIT_SEED)
    out = []
    stack = [g]
    while stack:
        u = stack.pop()
        if u.degree == 0:
            continue
        if u.degree == 1:
            a = -u.coeffs[0]
            out.append((a, _multiplicity(f, a)))
            continue
        w = _random_splitter(u, rng)
        d = gcd_monic(u, w)
        if 0 < (d.degree or 0) < u.degree:
            stack.append(d)
            stack.append(divmod_poly(u, d)[0])
        else:
            stack.append(u)
    out.sort(key=lambda pair: pair[0].key)
    return out


def _random_splitter(u, rng):
    """A polynomial whose gcd with u has a fair chance of being proper.

    u is monic, squarefree and a product of linear factors.
    """
    ctx = u.ctx
    cs = [ctx.from_key(rng.randrange(ctx.q)) for _ in range(u.degree)]
    h = _mk(ctx, _trim(cs))
    if h.is_zero:
        return h
    if ctx.p == 2:
        acc = divmod_poly(h, u)[1]
        cur = acc
        for _ in range(ctx.n - 1):
            cur = divmod_poly(cur * cur, u)[1]
            acc = acc + cur
        return acc
    w = _pow_mod(h, (ctx.q - 1) // 2, u)
    return w - u.ctx.one
