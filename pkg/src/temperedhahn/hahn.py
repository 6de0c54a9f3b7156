"""Truncated Hahn series over the reals.

A HahnSeries is a finite, strictly increasing list of (exponent, coefficient)
pairs together with a truncation order: the value it denotes is the listed
sum plus O(t^order).  order = None means the finite sum is exactly known.
Exponents and coefficients are scalars from the two-backend tower; in float
mode, exponents within tolerance are merged and coefficients within tolerance
of zero are dropped.

The canonical exact zero is the empty term list with order = None.
"""

from __future__ import annotations

import enum
from typing import Optional, Sequence

from gmpy2 import mpq

from .errors import (
    AmbiguousComparison,
    DivisionByZero,
    NoLeadingTerm,
    ParseError,
    PrecisionGain,
)
from .scalar import (
    NumericContext,
    Scalar,
    approx_eq,
    is_exact,
    sc_abs,
    sc_add,
    sc_ceil,
    sc_div,
    sc_mul,
    sc_neg,
    sc_sgn,
    sc_sub,
    scalar_from_str,
    scalar_to_str,
)


class Comparison(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1
    AMBIGUOUS = 2


class HahnSeries:
    """Immutable by convention; construct through the module functions."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: tuple, order: Optional[Scalar]):
        self.terms = terms
        self.order = order

    def is_zero(self) -> bool:
        """Exactly the canonical zero (no terms, order infinite)."""
        return not self.terms and self.order is None

    def is_exact(self) -> bool:
        return self.order is None

    def __eq__(self, other):
        if not isinstance(other, HahnSeries):
            return NotImplemented
        if (self.order is None) != (other.order is None):
            return False
        if self.order is not None and self.order != other.order:
            return False
        if len(self.terms) != len(other.terms):
            return False
        return all(e == e2 and c == c2 for (e, c), (e2, c2) in zip(self.terms, other.terms))

    def __hash__(self):
        return hash((self.terms, None if self.order is None else str(self.order)))

    def __repr__(self):
        if not self.terms and self.order is None:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(scalar_to_str(c))
            elif e == 1:
                parts.append(f"{scalar_to_str(c)}*t")
            else:
                parts.append(f"{scalar_to_str(c)}*t^({scalar_to_str(e)})")
        if self.order is not None:
            parts.append(f"O(t^({scalar_to_str(self.order)}))")
        return " + ".join(parts) if parts else "0"


HS_ZERO = HahnSeries((), None)


def make(ctx: NumericContext, pairs: Sequence, order: Optional[Scalar] = None) -> HahnSeries:
    """Normalize a raw list of (exponent, coefficient) pairs."""
    merged: list = []
    all_exact = all(is_exact(e) for e, _ in pairs)
    if all_exact:
        bucket: dict = {}
        for e, c in pairs:
            if e in bucket:
                bucket[e] = sc_add(ctx, bucket[e], c)
            else:
                bucket[e] = c
        merged = sorted(bucket.items(), key=lambda ec: ec[0])
    else:
        for e, c in sorted(pairs, key=lambda ec: ec[0]):
            if merged and sc_abs(ctx.gctx.sub(ctx.promote(e), ctx.promote(merged[-1][0]))) <= ctx.tol:
                merged[-1] = (merged[-1][0], sc_add(ctx, merged[-1][1], c))
            else:
                merged.append((e, c))
    out = []
    for e, c in merged:
        if is_exact(c):
            if c == 0:
                continue
        elif sc_abs(c) <= ctx.tol:
            continue
        if order is not None and not e < order:
            continue
        out.append((e, c))
    return HahnSeries(tuple(out), order)


def hs_const(ctx: NumericContext, c: Scalar) -> HahnSeries:
    return make(ctx, [(mpq(0), c)])


def hs_monomial(ctx: NumericContext, e: Scalar, c: Scalar) -> HahnSeries:
    return make(ctx, [(e, c)])


def hs_one(ctx: NumericContext) -> HahnSeries:
    return hs_const(ctx, mpq(1))


def hs_t(ctx: NumericContext) -> HahnSeries:
    return hs_monomial(ctx, mpq(1), mpq(1))


def valuation_exponent(a: HahnSeries) -> Optional[Scalar]:
    """Least exponent; the order for an empty truncated series; None for exact 0
    (whose valuation is +infinity)."""
    if a.terms:
        return a.terms[0][0]
    return a.order


def _min_order(*orders):
    finite = [w for w in orders if w is not None]
    if not finite:
        return None
    return min(finite)


def hs_add(ctx: NumericContext, a: HahnSeries, b: HahnSeries) -> HahnSeries:
    order = _min_order(a.order, b.order)
    return make(ctx, list(a.terms) + list(b.terms), order)


def hs_neg(ctx: NumericContext, a: HahnSeries) -> HahnSeries:
    return HahnSeries(tuple((e, sc_neg(c)) for e, c in a.terms), a.order)


def hs_sub(ctx: NumericContext, a: HahnSeries, b: HahnSeries) -> HahnSeries:
    return hs_add(ctx, a, hs_neg(ctx, b))


def hs_scalar_mul(ctx: NumericContext, s: Scalar, a: HahnSeries) -> HahnSeries:
    return make(ctx, [(e, sc_mul(ctx, s, c)) for e, c in a.terms], a.order)


def _mul_order(ctx: NumericContext, a: HahnSeries, b: HahnSeries):
    # omega = min(omega_a + v(b), omega_b + v(a)); v of an empty truncated
    # series is its order, v of exact zero is +infinity.
    cands = []
    va, vb = valuation_exponent(a), valuation_exponent(b)
    if a.order is not None:
        if vb is None:
            return None  # b is exact zero: product is exact zero
        cands.append(sc_add(ctx, a.order, vb))
    if b.order is not None:
        if va is None:
            return None
        cands.append(sc_add(ctx, b.order, va))
    return _min_order(*cands) if cands else None


def hs_mul(ctx: NumericContext, a: HahnSeries, b: HahnSeries) -> HahnSeries:
    if a.is_zero() or b.is_zero():
        return HS_ZERO
    order = _mul_order(ctx, a, b)
    bucket: dict = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            e = sc_add(ctx, ea, eb)
            if order is not None and not e < order:
                continue
            c = sc_mul(ctx, ca, cb)
            if e in bucket:
                bucket[e] = sc_add(ctx, bucket[e], c)
            else:
                bucket[e] = c
    return make(ctx, list(bucket.items()), order)


def hs_mul_monomial(ctx: NumericContext, a: HahnSeries, e: Scalar, c: Scalar) -> HahnSeries:
    """a * c*t^e, shifting the order along with the terms."""
    order = None if a.order is None else sc_add(ctx, a.order, e)
    return make(ctx, [(sc_add(ctx, ea, e), sc_mul(ctx, ca, c)) for ea, ca in a.terms], order)


def hs_pow_int(ctx: NumericContext, a: HahnSeries, n: int,
               target_order: Optional[Scalar] = None) -> HahnSeries:
    if n == 0:
        return hs_one(ctx)
    if n < 0:
        inv = hs_invert(ctx, a, target_order if target_order is not None else ctx.trunc)
        return hs_pow_int(ctx, inv, -n, target_order)
    out = a
    for _ in range(n - 1):
        out = hs_mul(ctx, out, a)
    return out


def hs_invert(ctx: NumericContext, a: HahnSeries, target_order: Scalar) -> HahnSeries:
    """Multiplicative inverse via leading-term factorization a = c t^q (1 + m)
    and a geometric series in m, truncated once the target precision is met."""
    if not a.terms:
        if a.order is None:
            raise DivisionByZero("inverse of exact zero")
        raise NoLeadingTerm("cannot invert a series indistinguishable from zero")
    q, c = a.terms[0]
    inv_c = sc_div(ctx, mpq(1), c)
    # m = a/(c t^q) - 1, in the maximal ideal
    m = make(ctx, [(sc_sub(ctx, e, q), sc_mul(ctx, cc, inv_c)) for e, cc in a.terms[1:]],
             None if a.order is None else sc_sub(ctx, a.order, q))
    # result order: min(target, omega_a - 2q); internal target is padded by
    # max(0, -q) so that a * result = 1 + O(t^target) even for q < 0.
    internal = sc_add(ctx, target_order, max(mpq(0), sc_neg(q)))
    res_order = internal if a.order is None else min(internal, sc_sub(ctx, a.order, sc_add(ctx, q, q)))
    if not m.terms:
        out_order = None if a.order is None else res_order
        return make(ctx, [(sc_neg(q), inv_c)], out_order)
    vm = m.terms[0][0]
    # sum_{k<N} (-m)^k with N*v(m) >= res_order + q
    need = sc_add(ctx, res_order, q)
    n_terms = max(1, sc_ceil(sc_div(ctx, need, vm)))
    neg_m = hs_neg(ctx, m)
    acc = hs_one(ctx)
    power = hs_one(ctx)
    cap = need  # truncate intermediates: exponents >= need contribute nothing
    for _ in range(n_terms):
        power = hs_mul(ctx, power, neg_m)
        power = make(ctx, list(power.terms), _min_order(power.order, cap))
        if not power.terms:
            break
        acc = hs_add(ctx, acc, power)
    return hs_mul_monomial(ctx, make(ctx, list(acc.terms), need), sc_neg(q), inv_c)


def hs_div(ctx: NumericContext, a: HahnSeries, b: HahnSeries,
           target_order: Optional[Scalar] = None) -> HahnSeries:
    return hs_mul(ctx, a, hs_invert(ctx, b, target_order if target_order is not None else ctx.trunc))


def hs_compare(ctx: NumericContext, a: HahnSeries, b: HahnSeries) -> Comparison:
    """Field order: the sign of a - b is the sign of its leading coefficient
    (t is a positive infinitesimal)."""
    d = hs_sub(ctx, a, b)
    if not d.terms:
        return Comparison.EQ if d.order is None else Comparison.AMBIGUOUS
    s = sc_sgn(ctx, d.terms[0][1])
    return Comparison.GT if s > 0 else Comparison.LT


def hs_truncate(ctx: NumericContext, a: HahnSeries, order: Scalar) -> HahnSeries:
    if a.order is not None and order > a.order:
        raise PrecisionGain(f"cannot raise truncation order {a.order} to {order}")
    return make(ctx, list(a.terms), order)


def hs_approx_eq(ctx: NumericContext, a: HahnSeries, b: HahnSeries,
                 below: Optional[Scalar] = None) -> bool:
    """Termwise approximate equality on all exponents below min(orders, below).

    Exact scalars compare exactly, float ones within tolerance.  Exponent
    lists are matched with the same tolerance discipline as `make`.
    """
    cut = _min_order(a.order, b.order, below)
    d = hs_sub(ctx, a, b)
    for e, c in d.terms:
        if cut is not None and not e < cut:
            continue
        if is_exact(c):
            return False
        # scale against the matching coefficients of the operands
        scale = mpq(1)
        for src in (a, b):
            for e2, c2 in src.terms:
                if e2 == e or sc_abs(ctx.gctx.sub(ctx.promote(e2), ctx.promote(e))) <= ctx.tol:
                    scale = max(ctx.promote(scale), sc_abs(ctx.promote(c2)))
        if sc_abs(c) > ctx.gctx.mul(ctx.tol, ctx.promote(scale)):
            return False
    return True


def leading_pair(a: HahnSeries):
    """(exponent, coefficient) of the leading term; None for exact zero."""
    if a.terms:
        return a.terms[0]
    if a.order is None:
        return None
    raise NoLeadingTerm("truncated series with no visible terms")


def to_json(a: HahnSeries) -> dict:
    return {
        "terms": [[scalar_to_str(e), scalar_to_str(c)] for e, c in a.terms],
        "order": None if a.order is None else scalar_to_str(a.order),
    }


def from_json(ctx: NumericContext, obj: dict) -> HahnSeries:
    if not isinstance(obj, dict) or "terms" not in obj:
        raise ParseError("series JSON must be an object with a 'terms' field")
    pairs = [(scalar_from_str(ctx, str(e)), scalar_from_str(ctx, str(c))) for e, c in obj["terms"]]
    order = obj.get("order")
    return make(ctx, pairs, None if order is None else scalar_from_str(ctx, str(order)))
