"""Analytic layer: exp/log between the valuation ring and positive units,
power functions on units, tempered powers and the tempered exponential.

Truncation budgeting: every operation here states its output order as a
function of the input order and the target; tests must only compare below
that guaranteed order.
"""

from __future__ import annotations

from typing import Optional

from gmpy2 import mpq

from .errors import DomainError, NotInO, NotPositive, NotPositiveUnit
from .hahn import (
    Comparison,
    HahnSeries,
    hs_add,
    hs_compare,
    hs_const,
    hs_monomial,
    hs_mul,
    hs_mul_monomial,
    hs_one,
    hs_pow_int,
    hs_scalar_mul,
    hs_sub,
    hs_approx_eq,
    HS_ZERO,
    make,
    _min_order,
)
from .scalar import (
    NumericContext,
    Scalar,
    exp_scalar,
    is_exact,
    sc_abs,
    log_scalar,
    sc_add,
    sc_ceil,
    sc_div,
    sc_mul,
    sc_neg,
    sc_sub,
)
from .valuation import embed_gamma, gamma_pow, leading, pi, residue, vv


def _truncate_to(ctx, a: HahnSeries, cap: Scalar) -> HahnSeries:
    return make(ctx, list(a.terms), _min_order(a.order, cap))


def _taylor_sum(ctx, b: HahnSeries, work_order: Scalar, coeff_fn) -> HahnSeries:
    """sum_{k>=1} coeff_fn(k) * b^k below work_order, for b in the maximal ideal."""
    if not b.terms:
        return HS_ZERO
    vb = b.terms[0][0]
    n_terms = max(1, sc_ceil(sc_div(ctx, work_order, vb)))
    acc = HS_ZERO
    power = hs_one(ctx)
    for k in range(1, n_terms + 1):
        power = _truncate_to(ctx, hs_mul(ctx, power, b), work_order)
        if not power.terms:
            break
        acc = hs_add(ctx, acc, hs_scalar_mul(ctx, coeff_fn(k), power))
    return acc


def exp_series(ctx: NumericContext, a: HahnSeries, target_order: Scalar) -> HahnSeries:
    """exp on the valuation ring: split a = a0 + b with a0 the standard part
    and b infinitesimal, then exp(a0) * sum b^k/k!.

    Output order: min(target_order, order of a).
    """
    lead = a.terms[0] if a.terms else None
    if lead is not None and lead[0] < 0:
        raise NotInO(f"exp needs valuation >= 0, least exponent is {lead[0]}")
    a0 = residue(ctx, a) if a.order is None or a.order > 0 else mpq(0)
    work_order = target_order if a.order is None else min(target_order, a.order)
    b = make(ctx, [(e, c) for e, c in a.terms if not (e == 0 or (not is_exact(e) and sc_abs(e) <= ctx.tol))],
             a.order)
    head = exp_scalar(ctx, a0)  # ModeError if a0 is exact nonzero
    if not b.terms:
        return make(ctx, [(mpq(0), head)], None if a.order is None else work_order)
    fact = [mpq(1)]

    def inv_factorial(k, _fact=fact):
        _fact[0] = _fact[0] * k
        return mpq(1, _fact[0])

    tail = _taylor_sum(ctx, _truncate_to(ctx, b, work_order), work_order, inv_factorial)
    unit = hs_add(ctx, hs_one(ctx), tail)
    out = hs_scalar_mul(ctx, head, unit)
    return make(ctx, list(out.terms), work_order)


def log_series(ctx: NumericContext, b: HahnSeries, target_order: Scalar) -> HahnSeries:
    """log on positive units: log(b0) + Mercator series in m = b/b0 - 1.

    Output order: min(target_order, order of b).
    """
    lead = b.terms[0] if b.terms else None
    if lead is None or not (lead[0] == 0 or (not is_exact(lead[0]) and sc_abs(lead[0]) <= ctx.tol)):
        raise NotPositiveUnit("log needs a unit (valuation exactly 0)")
    b0 = residue(ctx, b)
    if not b0 > 0:
        raise NotPositiveUnit(f"log needs a positive standard part, got {b0}")
    work_order = target_order if b.order is None else min(target_order, b.order)
    inv_b0 = sc_div(ctx, mpq(1), b0)
    m = make(ctx, [(e, sc_mul(ctx, c, inv_b0)) for e, c in b.terms if not (e == lead[0])], b.order)
    head = log_scalar(ctx, b0)  # ModeError if b0 exact != 1
    if not m.terms:
        return make(ctx, [(mpq(0), head)], None if b.order is None else work_order)

    def mercator(k):
        return mpq(1, k) if k % 2 else mpq(-1, k)

    tail = _taylor_sum(ctx, _truncate_to(ctx, m, work_order), work_order, mercator)
    out = hs_add(ctx, hs_const(ctx, head), tail)
    return make(ctx, list(out.terms), work_order)


def pow_unit(ctx: NumericContext, b: HahnSeries, a: HahnSeries, target_order: Scalar) -> HahnSeries:
    """b^a = exp(a log b) for b a positive unit and a in the valuation ring."""
    la = leading(a)
    if not la.is_zero and la.q < 0:
        raise NotInO("exponent must lie in the valuation ring")
    lb = log_series(ctx, b, target_order)
    return exp_series(ctx, hs_mul(ctx, a, lb), target_order)


def pow_unit_scalar(ctx: NumericContext, b: HahnSeries, g: Scalar, target_order: Scalar) -> HahnSeries:
    return pow_unit(ctx, b, hs_const(ctx, g), target_order)


def tempered_power(ctx: NumericContext, a: HahnSeries, g: Scalar,
                   target_order: Scalar) -> HahnSeries:
    """a^g = pi(vv(a)^g) * (a / pi(vv(a)))^g for a > 0.

    The value-group part is exact in coordinates; the unit part goes through
    exp/log.  Output is guaranteed below min(target_order, input-order shifted
    by the head exponent).
    """
    if is_exact(g):
        if g == 0:
            return hs_one(ctx)
        if g == 1:
            return a
    if hs_compare(ctx, a, HS_ZERO) is not Comparison.GT:
        raise NotPositive("tempered power needs a positive argument")
    q, _ = a.terms[0]
    gam = vv(ctx, a)  # sign +1 by positivity
    coord = gamma_pow(ctx, gam, g)
    head = pi(ctx, coord)  # monomial e^(-q*g) t^(q*g)
    # a / pi(vv(a)): divide by the monomial e^(-q) t^q
    scale = exp_scalar(ctx, ctx.promote(q)) if not (is_exact(q) and q == 0) else mpq(1)
    unit = hs_mul_monomial(ctx, a, sc_neg(q), scale)
    qg = coord.q
    unit_target = sc_sub(ctx, target_order, qg)
    if not unit_target > 0:
        unit_target = mpq(1)
    powered = pow_unit_scalar(ctx, unit, g, unit_target)
    return hs_mul(ctx, head, powered)


def tempered_exp(ctx: NumericContext, a: HahnSeries, x: HahnSeries,
                 target_order: Optional[Scalar] = None) -> HahnSeries:
    """exp-bar_a(x) = a^(vv(x)): the tempered exponential with base a."""
    if x.is_zero():
        raise DomainError("tempered exponential is undefined at 0")
    if hs_compare(ctx, a, HS_ZERO) is not Comparison.GT:
        raise NotPositive("tempered exponential needs a positive base")
    if a == hs_one(ctx):
        raise DomainError("base 1 is excluded")
    g = embed_gamma(ctx, vv(ctx, x))
    return tempered_power(ctx, a, g, target_order if target_order is not None else ctx.trunc)


def derivative_check(ctx: NumericContext, a: HahnSeries, g: Scalar, n: int,
                     cutoff: Scalar) -> bool:
    """Non-archimedean finite difference: with h = t^n,

        (a+h)^g - a^g) / h  ==  g * a^(g-1)   below `cutoff`.

    The difference quotient is exact in the valuation topology up to
    O(t^(n + q(g-2))), so cutoff must stay below that margin.
    """
    if n <= 0:
        raise DomainError("step exponent must be positive")
    h = hs_monomial(ctx, mpq(n), mpq(1))
    if vv(ctx, hs_add(ctx, a, h)) != vv(ctx, a):
        raise DomainError("step not small enough: it disturbs the valuation")
    target = sc_add(ctx, cutoff, mpq(n + 4))
    f_plus = tempered_power(ctx, hs_add(ctx, a, h), g, target)
    f_at = tempered_power(ctx, a, g, target)
    lhs = hs_mul_monomial(ctx, hs_sub(ctx, f_plus, f_at), mpq(-n), mpq(1))
    gm1 = sc_sub(ctx, g, mpq(1))
    rhs = hs_scalar_mul(ctx, g, tempered_power(ctx, a, gm1, sc_add(ctx, cutoff, mpq(2))))
    return hs_approx_eq(ctx, lhs, rhs, below=cutoff)
