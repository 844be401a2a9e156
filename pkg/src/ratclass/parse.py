"""Text form of rational expressions: an exact-arithmetic parser.

Grammar, insensitive to whitespace:

    expr   := term (("+" | "-") term)*
    term   := signed (("*" | "/")? signed)*      juxtaposition multiplies
    signed := ("+" | "-") signed | power
    power  := atom ("^" ["-"] integer)*
    atom   := integer | "t" | "x" | "(" expr ")"

Coefficients are integer literals (reduced into the field) or, over an
extension field, polynomials in the generator t.  Every subexpression
is carried as an exact fraction of polynomials, so parsing never loses
information; dividing by a subexpression that is identically zero is
an error reported at the slash.  The printed form of any expression
parses back to the identical normalized object.
"""

from __future__ import annotations

from .poly import Poly
from .ratexpr import RatExpr


class ParseError(ValueError):
    """A rejected input, carrying the offending position.

    str() renders the message, the source text and a caret under the
    position the parser stopped at.
    """

    def __init__(self, msg, text, pos):
        super().__init__(msg)
        self.msg = msg
        self.text = text
        self.pos = pos

    def __str__(self):
        return "parse error at position %d: %s\n    %s\n    %s^" % (
            self.pos, self.msg, self.text, " " * self.pos)


_OPS = "+-*/^()"


def _lex(text):
    """Tokens as (kind, value, position); kinds INT, NAME, OP, END."""
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            if ch not in ("x", "t"):
                raise ParseError("unknown symbol %r; only x and t name "
                                 "anything here" % ch, text, i)
            out.append(("NAME", ch, i))
            i += 1
            continue
        if ch in _OPS:
            out.append(("OP", ch, i))
            i += 1
            continue
        raise ParseError("stray character %r" % ch, text, i)
    out.append(("END", None, n))
    return out


class _Frac:
    """An unreduced fraction of polynomials; den is never zero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    def __add__(self, other):
        return _Frac(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    def __sub__(self, other):
        return _Frac(self.num * other.den - other.num * self.den,
                     self.den * other.den)

    def __mul__(self, other):
        return _Frac(self.num * other.num, self.den * other.den)

    def __neg__(self):
        return _Frac(-self.num, self.den)


class _Parser:
    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.toks = _lex(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, pos=None):
        raise ParseError(msg, self.text,
                         self.toks[self.i][2] if pos is None else pos)

    def const(self, c):
        return _Frac(Poly(self.ctx, (c,)), Poly(self.ctx, (1,)))

    def atom(self):
        kind, value, pos = self.take()
        if kind == "INT":
            return self.const(self.ctx.scalar(value))
        if kind == "NAME":
            if value == "x":
                return _Frac(Poly(self.ctx, (0, 1)), Poly(self.ctx, (1,)))
            if self.ctx.n == 1:
                self.fail("t names the extension generator, and %s has "
                          "none" % self.ctx.name, pos)
            return self.const(self.ctx.from_key(self.ctx.p))
        if kind == "OP" and value == "(":
            inner = self.expr(0)
            kind, value, pos = self.take()
            if not (kind == "OP" and value == ")"):
                self.fail("expected a closing parenthesis", pos)
            return inner
        self.fail("expected an operand: a number, x, t or a "
                  "parenthesized expression", pos)

    def signed(self):
        kind, value, pos = self.peek()
        if kind == "OP" and value in "+-":
            self.take()
            inner = self.signed()
            return -inner if value == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        while True:
            kind, value, pos = self.peek()
            if not (kind == "OP" and value == "^"):
                return base
            self.take()
            sign = 1
            kind, value, _ = self.peek()
            if kind == "OP" and value == "-":
                self.take()
                sign = -1
            kind, value, epos = self.take()
            if kind != "INT":
                self.fail("expected an integer exponent", epos)
            if sign < 0:
                if base.num.is_zero:
                    self.fail("negative power of an identically zero "
                              "expression", pos)
                base = _Frac(base.den ** value, base.num ** value)
            else:
                base = _Frac(base.num ** value, base.den ** value)

    def expr(self, min_bp):
        left = self.signed()
        while True:
            kind, value, pos = self.peek()
            if kind == "OP" and value in "+-":
                if min_bp > 10:
                    return left
                self.take()
                right = self.expr(11)
                left = left + right if value == "+" else left - right
                continue
            if kind == "OP" and value in "*/":
                if min_bp > 20:
                    return left
                self.take()
                right = self.expr(21)
                if value == "*":
                    left = left * right
                else:
                    if right.num.is_zero:
                        self.fail("division by an identically zero "
                                  "expression", pos)
                    left = _Frac(left.num * right.den,
                                 left.den * right.num)
                continue
            if kind in ("INT", "NAME") or (kind == "OP" and value == "("):
                if min_bp > 20:
                    return left
                right = self.expr(21)
                left = left * right
                continue
            return left


def parse_expression(text, ctx, require_map=False):
    """Parse text into a normalized expression over ctx.

    With require_map, constants (which no Moebius pair can move) are
    rejected.  Raises ParseError with the exact offending position.
    """
    parser = _Parser(text, ctx)
    value = parser.expr(0)
    kind, _, pos = parser.peek()
    if kind != "END":
        parser.fail("expected an operator or end of input", pos)
    R = RatExpr(value.num, value.den)
    if require_map and R.degree == 0:
        raise ParseError("constant expression where a map is required",
                         text, 0)
    return R
