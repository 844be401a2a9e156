"""Orbit enumeration under the two-sided Moebius action, at desk scale.

The group PGL_2(F_q) x PGL_2(F_q) acts on degree-r expressions by
(B, A) . R = B(R(A^{-1}(x))).  This module walks orbits breadth-first,
counts stabilizers, partitions the full set of quadratics or cubics
over a small field into classes, and verifies the partition against
closed-form counts.
"""

from __future__ import annotations

import itertools

from .classify import CASES, _forced_post, canonical_rep, classify, label_json
from .ffield import DESK_SCALE_BOUND
from .moebius import Moebius, PairAction, act, enumerate_pgl2, identity
from .poly import Poly, gcd_monic
from .ratexpr import count_expressions, enumerate_expressions

STATEMENTS = ("expr-count", "quad-counts", "char2-cubic-counts",
              "six-counts", "class-bound")


def _monic_of_degree(ctx, r):
    one = ctx.one
    for low in itertools.product(list(ctx), repeat=r):
        yield Poly(ctx, low + (one,))


def coprime_pair_count(ctx, r, s):
    """Count ordered pairs of coprime monic polynomials of degrees (r, s).

    Counted by enumeration; the total always comes out to
    q^(r+s-1)(q-1).
    """
    if r < 1 or s < 1:
        raise ValueError("both degrees must be at least 1")
    if ctx.q ** (r + s) > DESK_SCALE_BOUND:
        raise ValueError(
            "%d monic pairs of degrees (%d, %d) over %s exceed the limit %d"
            % (ctx.q ** (r + s), r, s, ctx.name, DESK_SCALE_BOUND))
    seconds = list(_monic_of_degree(ctx, s))
    n = 0
    for f in _monic_of_degree(ctx, r):
        for g in seconds:
            if gcd_monic(f, g).degree == 0:
                n += 1
    return n


def _pgl2_generators(ctx):
    gens = [Moebius(ctx, 1, 1, 0, 1), Moebius(ctx, 0, 1, 1, 0)]
    g = ctx.primitive
    if g.key != 1:
        gens.append(Moebius(ctx, g, ctx.zero, ctx.zero, ctx.one))
    return gens


def _pair_generators(ctx):
    idm = identity(ctx)
    gens = []
    for M in _pgl2_generators(ctx):
        gens.append(PairAction(M, idm))
        gens.append(PairAction(idm, M))
    return gens


def _check_scale(ctx, degree, limit):
    total = count_expressions(ctx, degree)
    bound = DESK_SCALE_BOUND if limit is None else limit
    if total > bound:
        raise ValueError(
            "%d expressions of degree %d over %s exceed the limit %d"
            % (total, degree, ctx.name, bound))
    return total


def orbit_of(R, limit=None):
    """The full orbit of R as a set, walked breadth-first."""
    ctx = R.ctx
    _check_scale(ctx, R.degree, limit)
    gens = _pair_generators(ctx)
    seen = {R}
    frontier = [R]
    while frontier:
        nxt = []
        for S in frontier:
            for pair in gens:
                T = act(pair, S)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return seen


def stabilizer_order(R):
    """Number of pairs fixing R.

    For each source-side A the target side is forced: at most one B can
    satisfy B(R(A^{-1}(x))) = R, so one forced-map check per group
    element decides membership.
    """
    ctx = R.ctx
    idm = identity(ctx)
    n = 0
    for A in enumerate_pgl2(ctx):
        S = act(PairAction(idm, A), R)
        if _forced_post(S, R) is not None:
            n += 1
    return n


class OrbitReport:
    """The full class partition of degree-r expressions over one field.

    classes is a list of dicts with keys representative, size, label
    and stabilizer_order, ordered by label; sizes sum to total, and
    size times stabilizer order is always (q^3-q)^2.
    """

    __slots__ = ("q", "degree", "classes", "total")

    def __init__(self, q, degree, classes, total):
        self.q = q
        self.degree = degree
        self.classes = classes
        self.total = total

    @property
    def class_count(self):
        return len(self.classes)

    def sizes_by_case(self):
        out = {}
        for c in self.classes:
            out.setdefault(c["label"].case, []).append(c["size"])
        return {case: sorted(sizes) for case, sizes in out.items()}

    def to_json(self, ctx):
        rows = []
        for c in self.classes:
            row = label_json(c["label"], ctx)
            row["representative"] = str(c["representative"])
            row["size"] = c["size"]
            row["stabilizer_order"] = c["stabilizer_order"]
            rows.append(row)
        return {"q": self.q, "degree": self.degree, "total": self.total,
                "class_count": self.class_count, "classes": rows}

    def __repr__(self):
        return "OrbitReport(q=%d, degree %d, %d classes, %d expressions)" \
            % (self.q, self.degree, self.class_count, self.total)


def _param_sort_key(v):
    if isinstance(v, int):
        return (0, v, 0)
    if isinstance(v, tuple):
        return (2, 0, tuple(v))
    return (1, v.key, 0)


def _label_sort_key(label):
    return (CASES.index(label.case),
            tuple((k, _param_sort_key(v)) for k, v in label.params))


def all_classes(ctx, degree, limit=None):
    """Partition every degree-2 or degree-3 expression into classes.

    Expressions are bucketed by classification label.  A non-FourPoint
    bucket is a single class: each member carries a verified witness
    onto the shared canonical representative.  FourPoint buckets are
    split into orbits breadth-first, so merged invariants cannot hide
    distinct classes.
    """
    if degree not in (2, 3):
        raise ValueError("class partitions cover degrees 2 and 3 only")
    total_expected = _check_scale(ctx, degree, limit)
    buckets = {}
    for R in enumerate_expressions(ctx, degree):
        label = classify(R)[0]
        buckets.setdefault(label, []).append(R)
    group_sq = (ctx.q ** 3 - ctx.q) ** 2
    classes = []
    for label in sorted(buckets, key=_label_sort_key):
        members = buckets[label]
        if label.case != "FourPoint":
            found = [(canonical_rep(label, ctx), len(members))]
        else:
            found = []
            remaining = set(members)
            while remaining:
                seed = min(remaining, key=lambda R: R.key)
                orb = orbit_of(seed, limit)
                if not orb <= remaining:
                    raise AssertionError(
                        "orbit of %s leaks out of its invariant bucket"
                        % (seed,))
                remaining -= orb
                found.append((min(orb, key=lambda R: R.key), len(orb)))
        for rep, size in found:
            if group_sq % size:
                raise AssertionError(
                    "class size %d does not divide the group order" % size)
            classes.append({"representative": rep, "size": size,
                            "label": label,
                            "stabilizer_order": group_sq // size})
    total = sum(c["size"] for c in classes)
    if total != total_expected:
        raise AssertionError("classes sum to %d, expected %d"
                             % (total, total_expected))
    return OrbitReport(ctx.q, degree, classes, total)


def _expected_quad_sizes(q, p):
    group_sq = (q ** 3 - q) ** 2
    if p == 2:
        return sorted([q * (q * q - 1), q * (q * q - 1) ** 2])
    return sorted([group_sq // (2 * (q - 1)), group_sq // (2 * (q + 1))])


def _expected_char2_cubic(q):
    base = q * q * (q * q - 1) ** 2
    group_sq = (q ** 3 - q) ** 2
    expected = {
        "Cubic2_i": [group_sq // (2 * (q - 1))],
        "Cubic2_ii": [group_sq // (2 * (q + 1))],
        "Cubic2_iii": [base],
    }
    if (q - 1) % 3 == 0:
        expected["Cubic2_iv"] = [base // 3] * 3
    else:
        expected["Cubic2_iv"] = [base]
    if q > 2:
        expected["Cubic2_v"] = [base // 2] * (q - 2)
        expected["Cubic2_vi"] = [base // 2] * (q - 2)
    return expected


def verify_statement(ctx, statement, limit=None):
    """Check one closed-form statement against enumeration.

    Returns (ok, details); details is a JSON-ready dict recording both
    the expected and the observed side.
    """
    q = ctx.q
    group_sq = (q ** 3 - q) ** 2
    if statement == "expr-count":
        details = {"statement": statement, "q": q, "degrees": {}}
        ok = True
        for degree in (2, 3):
            _check_scale(ctx, degree, limit)
            formula = count_expressions(ctx, degree)
            observed = sum(1 for _ in enumerate_expressions(ctx, degree))
            # expressions of degree r are (q-1) copies of the monic
            # coprime pairs with max degree r; degree-0 partners are
            # the q^r pairs with one side constant
            pairs = 2 * q ** degree + coprime_pair_count(ctx, degree, degree)
            for s in range(1, degree):
                pairs += coprime_pair_count(ctx, degree, s)
                pairs += coprime_pair_count(ctx, s, degree)
            details["degrees"][str(degree)] = {
                "formula": formula, "enumerated": observed,
                "monic_pair_decomposition": pairs * (q - 1)}
            ok = ok and formula == observed == pairs * (q - 1)
        return ok, details
    if statement == "quad-counts":
        report = all_classes(ctx, 2, limit)
        observed = sorted(c["size"] for c in report.classes)
        expected = _expected_quad_sizes(q, ctx.p)
        ok = observed == expected and report.class_count == 2
        return ok, {"statement": statement, "q": q,
                    "expected": expected, "observed": observed}
    if statement == "char2-cubic-counts":
        if ctx.p != 2:
            raise ValueError("statement needs characteristic 2")
        report = all_classes(ctx, 3, limit)
        expected = _expected_char2_cubic(q)
        observed = report.sizes_by_case()
        ok = observed == expected
        return ok, {"statement": statement, "q": q,
                    "expected": expected, "observed": observed}
    if statement == "six-counts":
        if ctx.p < 5:
            raise ValueError("statement needs characteristic at least 5")
        report = all_classes(ctx, 3, limit)
        expected = {
            "Cubic_X3": [group_sq // (2 * (q - 1))],
            "Cubic_TwoPointTwist": [group_sq // (2 * (q + 1))],
            "Cubic_Dickson": [group_sq // 2],
            "Cubic_DicksonTwist": [group_sq // 2],
        }
        observed = report.sizes_by_case()
        four = observed.pop("FourPoint", [])
        named_total = q * q * (q - 1) * (q + 1) * (q * q + q - 1)
        four_total = q * q * (q + 1) ** 2 * (q - 1) ** 3
        ok = (observed == expected
              and sum(v[0] for v in expected.values()) == named_total
              and sum(four) == four_total)
        return ok, {"statement": statement, "q": q,
                    "expected": expected, "observed": observed,
                    "four_point_total": {"formula": four_total,
                                         "observed": sum(four)}}
    if statement == "class-bound":
        report = all_classes(ctx, 3, limit)
        bound = 6 * q - 2
        ok = report.class_count <= bound
        return ok, {"statement": statement, "q": q,
                    "bound": bound, "class_count": report.class_count}
    raise ValueError("unknown statement %r; know %s"
                     % (statement, ", ".join(STATEMENTS)))
