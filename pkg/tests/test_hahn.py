import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from temperedhahn.errors import (
    AmbiguousComparison,
    DivisionByZero,
    NoLeadingTerm,
    PrecisionGain,
)
from temperedhahn.hahn import (
    Comparison,
    HS_ZERO,
    HahnSeries,
    from_json,
    hs_add,
    hs_approx_eq,
    hs_compare,
    hs_const,
    hs_div,
    hs_invert,
    hs_monomial,
    hs_mul,
    hs_mul_monomial,
    hs_neg,
    hs_one,
    hs_pow_int,
    hs_sub,
    hs_t,
    hs_truncate,
    make,
    to_json,
    valuation_exponent,
)
from temperedhahn.scalar import NumericContext

ctx = NumericContext()

exponents = st.integers(-10, 10).map(lambda k: mpq(k, 2))
coeffs = st.fractions(min_value=-9, max_value=9).filter(bool).map(lambda f: mpq(f))
series = st.lists(st.tuples(exponents, coeffs), max_size=6).map(lambda ps: make(ctx, ps))


def s(*pairs, order=None):
    return make(ctx, [(mpq(e), mpq(c)) for e, c in pairs], None if order is None else mpq(order))


def test_make_normalizes():
    a = make(ctx, [(mpq(1), mpq(2)), (mpq(0), mpq(3)), (mpq(1), mpq(-2))])
    assert a == s((0, 3))
    assert make(ctx, [], None).is_zero()
    assert make(ctx, [(mpq(5), mpq(1))], mpq(3)).terms == ()


def test_make_merges_float_exponents():
    e = ctx.float_(1)
    e2 = ctx.gctx.add(e, ctx.gctx.mul(ctx.tol, ctx.float_(mpq(1, 4))))
    a = make(ctx, [(e, ctx.float_(2)), (e2, ctx.float_(3))])
    assert len(a.terms) == 1
    assert a.terms[0][1] == 5


def test_add_sub():
    a = s((0, 1), (1, 2))
    b = s((1, -2), (3, 5))
    assert hs_add(ctx, a, b) == s((0, 1), (3, 5))
    assert hs_sub(ctx, a, a).is_zero()
    assert hs_add(ctx, a, HS_ZERO) == a


def test_order_propagation():
    a = s((0, 1), order=4)
    b = s((2, 1), order=3)
    assert hs_add(ctx, a, b).order == 3
    # mul: min(w_a + v(b), w_b + v(a))
    assert hs_mul(ctx, a, b).order == mpq(3)
    assert hs_mul(ctx, a, s((2, 1))).order == mpq(6)


def test_mul_values():
    a = s((0, 1), (1, 1))
    b = s((0, 1), (1, -1))
    assert hs_mul(ctx, a, b) == s((0, 1), (2, -1))
    t = hs_t(ctx)
    assert hs_mul(ctx, t, t) == s((2, 1))
    assert hs_mul(ctx, a, HS_ZERO).is_zero()


def test_mul_monomial_shifts_order():
    a = s((1, 2), order=3)
    out = hs_mul_monomial(ctx, a, mpq(-1), mpq(1, 2))
    assert out == s((0, 1), order=2)


def test_invert_geometric():
    a = s((0, 1), (1, -1))  # 1 - t
    inv = hs_invert(ctx, a, mpq(4))
    assert inv == s((0, 1), (1, 1), (2, 1), (3, 1), order=4)


def test_invert_negative_valuation():
    # 1/(t^(-1)(1+t)) = t - t^2 + ...; the product must be 1 + O(t^target)
    a = s((-1, 1), (0, 1))
    inv = hs_invert(ctx, a, mpq(5))
    prod = hs_mul(ctx, a, inv)
    d = hs_sub(ctx, prod, hs_one(ctx))
    assert all(e >= 5 for e, _ in d.terms)
    assert prod.order is None or prod.order >= 5


def test_invert_errors():
    with pytest.raises(DivisionByZero):
        hs_invert(ctx, HS_ZERO, mpq(4))
    with pytest.raises(NoLeadingTerm):
        hs_invert(ctx, make(ctx, [], mpq(2)), mpq(4))


def test_div():
    num = s((2, 1))
    den = s((1, 1))
    # dividing by an exact monomial stays exact
    assert hs_div(ctx, num, den, mpq(8)) == s((1, 1))
    out = hs_div(ctx, hs_one(ctx), s((0, 1), (1, 1)), mpq(3))
    assert out == s((0, 1), (1, -1), (2, 1), order=3)


def test_pow_int():
    a = s((0, 1), (1, 1))
    assert hs_pow_int(ctx, a, 0) == hs_one(ctx)
    assert hs_pow_int(ctx, a, 3) == s((0, 1), (1, 3), (2, 3), (3, 1))
    inv2 = hs_pow_int(ctx, a, -2, mpq(3))
    assert inv2 == s((0, 1), (1, -2), (2, 3), order=3)


def test_compare():
    assert hs_compare(ctx, s((1, 1)), HS_ZERO) is Comparison.GT
    assert hs_compare(ctx, s((1, -1)), HS_ZERO) is Comparison.LT
    assert hs_compare(ctx, s((0, 1)), s((0, 1))) is Comparison.EQ
    # t is a positive infinitesimal: 0 < t < any positive constant
    assert hs_compare(ctx, hs_t(ctx), hs_const(ctx, mpq(1, 1000))) is Comparison.LT
    assert hs_compare(ctx, s((0, 1), order=2), s((0, 1), order=3)) is Comparison.AMBIGUOUS


def test_truncate():
    a = s((0, 1), (5, 1))
    assert hs_truncate(ctx, a, mpq(3)) == s((0, 1), order=3)
    with pytest.raises(PrecisionGain):
        hs_truncate(ctx, s((0, 1), order=2), mpq(5))


def test_valuation_exponent():
    assert valuation_exponent(s((-2, 1), (1, 1))) == mpq(-2)
    assert valuation_exponent(HS_ZERO) is None
    assert valuation_exponent(make(ctx, [], mpq(3))) == mpq(3)


def test_approx_eq_termwise():
    a = make(ctx, [(mpq(0), ctx.float_(1))])
    bump = ctx.gctx.mul(ctx.tol, ctx.float_(mpq(1, 3)))
    b = make(ctx, [(mpq(0), ctx.gctx.add(ctx.float_(1), bump))])
    assert hs_approx_eq(ctx, a, b)
    c = make(ctx, [(mpq(0), ctx.float_(1)), (mpq(1), ctx.float_(1))])
    assert not hs_approx_eq(ctx, a, c)
    assert hs_approx_eq(ctx, a, c, below=mpq(1))


def test_json_round_trip():
    a = s((-1, 2), (mpq(1, 2), mpq(-3, 4)), order=7)
    assert from_json(ctx, to_json(a)) == a
    assert from_json(ctx, to_json(HS_ZERO)).is_zero()


@given(series, series, series)
@settings(max_examples=200, deadline=None)
def test_ring_laws(a, b, c):
    assert hs_add(ctx, a, b) == hs_add(ctx, b, a)
    assert hs_mul(ctx, a, b) == hs_mul(ctx, b, a)
    assert hs_add(ctx, hs_add(ctx, a, b), c) == hs_add(ctx, a, hs_add(ctx, b, c))
    assert hs_mul(ctx, hs_mul(ctx, a, b), c) == hs_mul(ctx, a, hs_mul(ctx, b, c))
    lhs = hs_mul(ctx, a, hs_add(ctx, b, c))
    rhs = hs_add(ctx, hs_mul(ctx, a, b), hs_mul(ctx, a, c))
    assert lhs == rhs
    assert hs_add(ctx, a, hs_neg(ctx, a)).is_zero()


@given(series)
@settings(max_examples=100, deadline=None)
def test_inverse_law(a):
    if not a.terms:
        return
    prod = hs_mul(ctx, a, hs_invert(ctx, a, mpq(5)))
    d = hs_sub(ctx, prod, hs_one(ctx))
    assert all(e >= 5 for e, _ in d.terms)
