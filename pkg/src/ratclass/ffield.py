"""Arithmetic in finite fields F_q, q = p^n, with reproducible conventions.

Every choice made here is a pure function of (p, n), so independent runs
agree on all canonical data built downstream:

* elements are coefficient vectors over F_p in the power basis of a fixed
  defining polynomial, and they order as the integers sum(a_i * p^i);
* the defining polynomial of F_{p^n} is the first monic irreducible found
  when those integer codes are scanned upward;
* the embedding F_{p^a} -> F_{p^b} factors [b:a] into primes in ascending
  order and sends each generator to the least root of its defining
  polynomial at every step, so embeddings along nested ascending towers
  compose consistently;
* square roots return the lesser of the two candidates, and the
  distinguished constants sigma (least nonsquare, or least element of
  absolute trace 1 in characteristic 2), theta (least noncube) and tau
  (least root of the canonical quadratic over sigma) are all "least" in
  the same element order.

Fields with at most 2^13 elements intern every element and multiply
through discrete-log tables; larger fields use direct polynomial
arithmetic.  The constructor refuses q above 2^24, which keeps every
supported computation comfortably inside one desk session.
"""

from __future__ import annotations

import functools
import itertools

DESK_SCALE_BOUND = 1 << 24
INTERN_BOUND = 1 << 13

_uids = itertools.count()


def _is_prime(m):
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def _prime_factors(m):
    """Sorted distinct prime factors of m >= 1."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


# Dense integer polynomials over F_p, little-endian coefficient lists.
# Used only while choosing defining polynomials, before any field exists.

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod_monic(a, f, p):
    # reduce a modulo the monic polynomial f, fixed width len(f) - 1
    a = list(a)
    n = len(f) - 1
    if len(a) < n:
        a += [0] * (n - len(a))
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            base = i - n
            for j in range(n):
                if f[j]:
                    a[base + j] = (a[base + j] - c * f[j]) % p
    return a[:n]


def _pmulmod(a, b, f, p):
    if not any(a) or not any(b):
        return [0] * (len(f) - 1)
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod_monic(out, f, p)


def _ppow(base, e, f, p):
    result = _pmod_monic([1], f, p)
    cur = _pmod_monic(base, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, cur, f, p)
        cur = _pmulmod(cur, cur, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a = _ptrim([x % p for x in a])
    b = _ptrim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        r = list(a)
        while len(r) >= len(b) and any(r):
            _ptrim(r)
            if len(r) < len(b):
                break
            c = (r[-1] * inv) % p
            shift = len(r) - len(b)
            for j in range(len(b)):
                r[shift + j] = (r[shift + j] - c * b[j]) % p
            _ptrim(r)
        a, b = b, r
    return a


def _irreducible_mod_p(f, p):
    """Rabin test for the monic polynomial f over F_p."""
    n = len(f) - 1
    x = [0, 1]
    xq = _ppow(x, p ** n, f, p)
    xm = _pmod_monic(x, f, p)
    if _ptrim([(u - v) % p for u, v in zip(xq, xm)]):
        return False
    for ell in _prime_factors(n):
        u = _ppow(x, p ** (n // ell), f, p)
        diff = _ptrim([(a - b) % p for a, b in zip(u, xm)])
        g = _pgcd(diff, f, p)
        if len(g) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _defining_poly(p, n):
    """First monic irreducible of degree n over F_p in code order.

    Code k encodes the non-leading coefficients little-endian in base p,
    so the scan respects the same element order used everywhere else.
    """
    for k in range(p ** n):
        digits = []
        kk = k
        for _ in range(n):
            digits.append(kk % p)
            kk //= p
        f = digits + [1]
        if _irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible of degree %d over F_%d" % (n, p))


class Fel:
    """One field element: an immutable coefficient vector over F_p.

    Elements compare, sort and hash by their integer code
    sum(rep[i] * p^i).  Arithmetic coerces Python ints on either side
    (they reduce mod p); elements of two different fields never mix,
    embeddings are always explicit.
    """

    __slots__ = ("ctx", "rep", "key")

    def __init__(self, ctx, rep, key):
        self.ctx = ctx
        self.rep = rep
        self.key = key

    # -- construction helpers live on FieldCtx; dunders only here --

    def _lift(self, other):
        if type(other) is Fel:
            if other.ctx is not self.ctx:
                raise TypeError("elements of %s and %s do not mix" %
                                (self.ctx.name, other.ctx.name))
            return other
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        ctx = self.ctx
        if ctx.n == 1:
            return ctx._by_key((self.key + other.key) % ctx.p)
        rep = tuple((a + b) % ctx.p for a, b in zip(self.rep, other.rep))
        return ctx._from_rep(rep)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        ctx = self.ctx
        if ctx.n == 1:
            return ctx._by_key((self.key - other.key) % ctx.p)
        rep = tuple((a - b) % ctx.p for a, b in zip(self.rep, other.rep))
        return ctx._from_rep(rep)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other.__sub__(self)

    def __neg__(self):
        ctx = self.ctx
        if ctx.n == 1:
            return ctx._by_key(-self.key % ctx.p)
        return ctx._from_rep(tuple(-a % ctx.p for a in self.rep))

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        ctx = self.ctx
        log = ctx._log
        if log is not None:
            ka, kb = self.key, other.key
            if ka == 0 or kb == 0:
                return ctx.zero
            return ctx._exp[(log[ka] + log[kb]) % (ctx.q - 1)]
        return ctx._from_rep(_mul_rep(self.rep, other.rep, ctx.p, ctx.defining))

    __rmul__ = __mul__

    def inverse(self):
        ctx = self.ctx
        if self.key == 0:
            raise ZeroDivisionError("inverse of 0 in " + ctx.name)
        log = ctx._log
        if log is not None:
            return ctx._exp[(ctx.q - 1 - log[self.key]) % (ctx.q - 1)]
        return ctx._from_rep(_pow_rep(self.rep, ctx.q - 2, ctx.p, ctx.defining))

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        ctx = self.ctx
        if self.key == 0:
            if e == 0:
                return ctx.one
            if e < 0:
                raise ZeroDivisionError("0 to a negative power in " + ctx.name)
            return self
        e %= ctx.q - 1
        log = ctx._log
        if log is not None:
            return ctx._exp[(log[self.key] * e) % (ctx.q - 1)]
        return ctx._from_rep(_pow_rep(self.rep, e, ctx.p, ctx.defining))

    def __eq__(self, other):
        if type(other) is Fel:
            return self.ctx is other.ctx and self.key == other.key
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.uid, self.key))

    def _cmp_ready(self, other):
        if type(other) is not Fel or other.ctx is not self.ctx:
            raise TypeError("order is defined within a single field")
        return other

    def __lt__(self, other):
        return self.key < self._cmp_ready(other).key

    def __le__(self, other):
        return self.key <= self._cmp_ready(other).key

    def __gt__(self, other):
        return self.key > self._cmp_ready(other).key

    def __ge__(self, other):
        return self.key >= self._cmp_ready(other).key

    def __bool__(self):
        return self.key != 0

    def __str__(self):
        ctx = self.ctx
        if ctx.n == 1:
            return str(self.key)
        parts = []
        for i in range(ctx.n - 1, -1, -1):
            c = self.rep[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "t" if i == 1 else "t^%d" % i
                parts.append(var if c == 1 else str(c) + var)
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return "%s:%s" % (self.ctx.name, self)


def _mul_rep(x, y, p, f):
    n = len(f) - 1
    out = [0] * (2 * n - 1)
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
    for i in range(2 * n - 2, n - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            base = i - n
            for j in range(n):
                if f[j]:
                    out[base + j] = (out[base + j] - c * f[j]) % p
    return tuple(out[:n])


def _pow_rep(rep, e, p, f):
    n = len(f) - 1
    result = (1,) + (0,) * (n - 1)
    cur = rep
    while e:
        if e & 1:
            result = _mul_rep(result, cur, p, f)
        cur = _mul_rep(cur, cur, p, f)
        e >>= 1
    return result


class FieldCtx:
    """The field F_q with its canonical defining polynomial.

    Construct through field_create, which caches one context per (p, n);
    context identity is object identity.  Iterating a context yields all
    q elements in ascending code order.
    """

    def __init__(self, p, n):
        self.p = p
        self.n = n
        self.q = p ** n
        self.defining = _defining_poly(p, n)
        self.name = "F_%d" % self.q
        self.uid = next(_uids)
        self.elements = None
        self._exp = None
        self._log = None
        self._primitive = None
        if self.q <= INTERN_BOUND:
            self._intern()
        else:
            self.zero = Fel(self, (0,) * n, 0)
            self.one = Fel(self, (1,) + (0,) * (n - 1), 1)
        self.gen = self.from_key(p) if n > 1 else None

    def _decode(self, k):
        digits = []
        for _ in range(self.n):
            digits.append(k % self.p)
            k //= self.p
        return tuple(digits)

    def _intern(self):
        els = [Fel(self, self._decode(k), k) for k in range(self.q)]
        self.elements = els
        self.zero = els[0]
        self.one = els[1]
        q = self.q
        prim = self._find_primitive()
        exp = [None] * (q - 1)
        log = [0] * q
        rep = self.one.rep
        key = 1
        for i in range(q - 1):
            exp[i] = els[key]
            log[key] = i
            rep = _mul_rep(rep, prim.rep, self.p, self.defining)
            key = 0
            for c in reversed(rep):
                key = key * self.p + c
        self._exp = exp
        self._log = log
        self._primitive = els[prim.key]

    def _find_primitive(self):
        q = self.q
        if q == 2:
            return self.elements[1]
        fac = _prime_factors(q - 1)
        for a in self.elements[1:]:
            if all(_pow_rep(a.rep, (q - 1) // ell, self.p, self.defining)
                   != self.one.rep for ell in fac):
                return a
        raise AssertionError("no primitive element in " + self.name)

    @property
    def primitive(self):
        """Least generator of the multiplicative group."""
        if self._primitive is None:
            self._primitive = self._find_primitive_big()
        return self._primitive

    def _find_primitive_big(self):
        q = self.q
        fac = _prime_factors(q - 1)
        for k in range(1, q):
            a = self.from_key(k)
            if all((a ** ((q - 1) // ell)).key != 1 for ell in fac):
                return a
        raise AssertionError("no primitive element in " + self.name)

    def _by_key(self, k):
        els = self.elements
        if els is not None:
            return els[k]
        return Fel(self, self._decode(k), k)

    def _from_rep(self, rep):
        key = 0
        for c in reversed(rep):
            key = key * self.p + c
        els = self.elements
        if els is not None:
            return els[key]
        return Fel(self, rep, key)

    def scalar(self, m):
        """The constant m, reduced mod p."""
        return self._by_key(m % self.p)

    def from_key(self, k):
        """The element whose integer code is k, 0 <= k < q."""
        if not 0 <= k < self.q:
            raise ValueError("code %d out of range for %s" % (k, self.name))
        return self._by_key(k)

    def make(self, coeffs):
        """The element with the given coefficient vector over F_p."""
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.n:
            raise ValueError("too many coefficients for " + self.name)
        cs += [0] * (self.n - len(cs))
        return self._from_rep(tuple(cs))

    def __iter__(self):
        if self.elements is not None:
            return iter(self.elements)
        return (self._by_key(k) for k in range(self.q))

    def __len__(self):
        return self.q

    def __repr__(self):
        return self.name


def field_create(p, n=1):
    """The field with p^n elements; cached, so contexts are singletons."""
    return _field_create(p, n)


@functools.lru_cache(maxsize=None)
def _field_create(p, n):
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError("%r is not prime" % (p,))
    if not isinstance(n, int) or n < 1:
        raise ValueError("extension degree must be a positive integer")
    if p ** n > DESK_SCALE_BOUND:
        raise ValueError("p^n = %d exceeds the desk-scale bound 2^24" % p ** n)
    return FieldCtx(p, n)


def frobenius(a, k=1):
    """a raised to the p^k power."""
    return a ** (a.ctx.p ** k)


def trace_absolute(a):
    """Absolute trace down to F_p, returned as a constant of a's field."""
    acc = a
    cur = a
    for _ in range(a.ctx.n - 1):
        cur = frobenius(cur)
        acc = acc + cur
    return acc


def degree_over(a, base):
    """Degree of a over the subfield base: least e with a^(base.q^e) = a."""
    ctx = a.ctx
    if ctx.p != base.p or ctx.n % base.n:
        raise ValueError("%s is not an extension of %s" % (ctx.name, base.name))
    bound = ctx.n // base.n
    cur = a
    for e in range(1, bound + 1):
        cur = cur ** base.q
        if cur == a:
            return e
    raise AssertionError("degree scan failed for %r over %s" % (a, base.name))


def is_square(a):
    if a.ctx.p == 2 or a.key == 0:
        return True
    return (a ** ((a.ctx.q - 1) // 2)).key == 1


def sqrt(a):
    """The canonical square root: lesser of the two candidates.

    In characteristic 2 the root is unique.  Raises ValueError on a
    nonsquare.
    """
    ctx = a.ctx
    if ctx.p == 2:
        return a ** (ctx.q // 2)
    if a.key == 0:
        return a
    if not is_square(a):
        raise ValueError("%r is not a square" % (a,))
    q = ctx.q
    m = q - 1
    s = 0
    while m % 2 == 0:
        m //= 2
        s += 1
    c = canonical_sigma(ctx) ** m
    r = a ** ((m + 1) // 2)
    t = a ** m
    while t.key != 1:
        i = 0
        tt = t
        while tt.key != 1:
            tt = tt * tt
            i += 1
        b = c ** (1 << (s - i - 1))
        r = r * b
        c = b * b
        t = t * c
        s = i
    return min(r, -r)


@functools.lru_cache(maxsize=None)
def canonical_sigma(ctx):
    """Least nonsquare, or in characteristic 2 the least element of
    absolute trace 1."""
    if ctx.p == 2:
        for a in ctx:
            if trace_absolute(a).key == 1:
                return a
        raise AssertionError("no trace-one element in " + ctx.name)
    for a in ctx:
        if a.key and not is_square(a):
            return a
    raise AssertionError("no nonsquare in " + ctx.name)


@functools.lru_cache(maxsize=None)
def canonical_theta(ctx):
    """Least noncube.  Defined only when 3 divides q - 1."""
    if (ctx.q - 1) % 3:
        raise ValueError("every element of %s is a cube" % ctx.name)
    e = (ctx.q - 1) // 3
    for a in ctx:
        if a.key and (a ** e).key != 1:
            return a
    raise AssertionError("no noncube in " + ctx.name)


@functools.lru_cache(maxsize=None)
def canonical_tau(ctx):
    """Canonical generator of the quadratic extension over sigma.

    Odd characteristic: the least root of z^2 = sigma in F_{q^2}, so
    tau^q = -tau.  Characteristic 2: the least root of z^2 + z = sigma,
    so tau^q = tau + 1.  Either way tau * tau^q lands back on sigma up
    to the sign conventions used downstream.
    """
    ext = field_create(ctx.p, 2 * ctx.n)
    s = embed(ctx, ext)(canonical_sigma(ctx))
    if ctx.p == 2:
        return _artin_schreier_root(s)
    return sqrt(s)


def _artin_schreier_root(c):
    """Least z with z^2 + z = c, over a characteristic-2 field."""
    ctx = c.ctx
    if ctx.p != 2:
        raise ValueError("characteristic 2 only")
    if trace_absolute(c).key != 0:
        raise ValueError("%r has absolute trace 1, no root exists" % (c,))
    cols = []
    for i in range(ctx.n):
        b = ctx.from_key(1 << i)
        cols.append(list((b * b + b).rep))
    sol = _solve_mod_p(cols, list(c.rep), 2)
    if sol is None:
        raise AssertionError("trace said solvable but solve failed")
    z = ctx.make(sol)
    return min(z, z + ctx.one)


def _solve_mod_p(cols, target, p):
    """One solution x of sum x_j cols[j] = target over F_p, else None."""
    rows = len(target)
    ncols = len(cols)
    m = [[cols[j][i] for j in range(ncols)] + [target[i] % p]
         for i in range(rows)]
    piv = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(v - f * w) % p for v, w in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][ncols]:
            return None
    x = [0] * ncols
    for i, c in enumerate(piv):
        x[c] = m[i][ncols]
    return x


class Embedding:
    """Field inclusion determined by the image of the source generator."""

    __slots__ = ("src", "dst", "image_of_generator", "_pows")

    def __init__(self, src, dst, image):
        self.src = src
        self.dst = dst
        self.image_of_generator = image
        pows = [dst.one]
        for _ in range(src.n - 1):
            pows.append(pows[-1] * image)
        self._pows = pows

    def __call__(self, a):
        if a.ctx is not self.src:
            raise TypeError("element of %s given to an embedding of %s" %
                            (a.ctx.name, self.src.name))
        if self.src.n == 1:
            return self.dst.scalar(a.key)
        acc = self.dst.zero
        for c, w in zip(a.rep, self._pows):
            if c:
                acc = acc + c * w
        return acc

    def preimage(self, b):
        """The source element mapping to b; ValueError if b is outside
        the image subfield."""
        if b.ctx is not self.dst:
            raise TypeError("element of %s given to an embedding into %s" %
                            (b.ctx.name, self.dst.name))
        cols = [list(w.rep) for w in self._pows]
        sol = _solve_mod_p(cols, list(b.rep), self.dst.p)
        if sol is None:
            raise ValueError("%r is not in the image of %s" %
                             (b, self.src.name))
        a = self.src.make(sol)
        if self(a) != b:
            raise ValueError("%r is not in the image of %s" %
                             (b, self.src.name))
        return a

    def __repr__(self):
        return "Embedding(%s -> %s)" % (self.src.name, self.dst.name)


def _least_root_of_subfield_poly(coeffs, dst):
    """Least root in dst of a polynomial given by integer coefficients.

    The polynomial is monic and splits completely in dst (it is the
    defining polynomial of a subfield), so small fields are scanned in
    code order and large fields go through the generic root finder.
    """
    cs = [dst.scalar(c) for c in coeffs]
    if dst.elements is not None:
        for a in dst.elements:
            acc = dst.zero
            for c in reversed(cs):
                acc = acc * a + c
            if acc.key == 0:
                return a
        raise AssertionError("defining polynomial has no root in " + dst.name)
    from . import poly as _poly
    f = _poly.Poly(dst, tuple(cs))
    rs = _poly.roots(f)
    if not rs:
        raise AssertionError("defining polynomial has no root in " + dst.name)
    return rs[0][0]


@functools.lru_cache(maxsize=None)
def embed(src, dst):
    """The canonical embedding src -> dst (src.n must divide dst.n).

    [dst:src] is factored into primes in ascending order; each step maps
    the current generator to the least root of its defining polynomial
    one floor up.  Chains built this way nest: whenever the ascending
    factorizations concatenate, embed(a, c) equals embed(b, c) composed
    with embed(a, b), and the 2-2 towers used downstream always do.
    """
    if src.p != dst.p:
        raise ValueError("different characteristics %d and %d" % (src.p, dst.p))
    if dst.n % src.n:
        raise ValueError("%s does not embed in %s" % (src.name, dst.name))
    if src is dst:
        return Embedding(src, dst, dst.gen if dst.n > 1 else dst.one)
    m = dst.n // src.n
    steps = []
    for ell in _prime_factors(m):
        while m % ell == 0:
            steps.append(ell)
            m //= ell
    cur = src
    image = src.gen if src.n > 1 else src.one
    for ell in steps:
        nxt = field_create(src.p, cur.n * ell)
        root = _least_root_of_subfield_poly(cur.defining, nxt)
        step = Embedding(cur, nxt, root)
        image = step(image) if cur.n > 1 else nxt.one
        cur = nxt
    return Embedding(src, dst, image)


def extend(ctx, m):
    """The degree-m extension of ctx together with the embedding into it."""
    if m < 1:
        raise ValueError("extension degree must be at least 1")
    top = field_create(ctx.p, ctx.n * m)
    return top, embed(ctx, top)
