import gmpy2
import pytest
from gmpy2 import mpfr, mpq

from temperedhahn.errors import DomainError, NotInO, NotPositive, NotPositiveUnit
from temperedhahn.hahn import (
    HS_ZERO,
    hs_add,
    hs_approx_eq,
    hs_monomial,
    hs_mul,
    hs_one,
    hs_pow_int,
    hs_sub,
    make,
)
from temperedhahn.scalar import NumericContext, approx_eq
from temperedhahn.tempered import (
    derivative_check,
    exp_series,
    log_series,
    pow_unit,
    pow_unit_scalar,
    tempered_exp,
    tempered_power,
)
from temperedhahn.valuation import ac, gamma, gamma_pow, vv

ctx = NumericContext()

ORACLE = gmpy2.context(precision=400)


def s(*pairs, order=None):
    return make(ctx, [(mpq(e), mpq(c)) for e, c in pairs], None if order is None else mpq(order))


def fs(*pairs):
    return make(ctx, [(mpq(e), ctx.float_(c)) for e, c in pairs])


def test_exp_taylor():
    out = exp_series(ctx, s((1, 1)), mpq(4))
    assert out == s((0, 1), (1, 1), (2, mpq(1, 2)), (3, mpq(1, 6)), order=4)
    assert exp_series(ctx, HS_ZERO, mpq(4)) == make(ctx, [(mpq(0), mpq(1))])


def test_exp_splits_standard_part():
    # exp(1 + t) = e * exp(t); the constant head comes from the scalar engine
    a = make(ctx, [(mpq(0), ctx.float_(1)), (mpq(1), ctx.float_(1))])
    out = exp_series(ctx, a, mpq(3))
    e_const = ORACLE.exp(mpfr(1, precision=400))
    assert abs(ORACLE.sub(out.terms[0][1], e_const)) <= ctx.gctx.mul(ctx.tol, ctx.float_(3))
    assert approx_eq(ctx, out.terms[1][1], out.terms[0][1])


def test_exp_needs_valuation_ring():
    with pytest.raises(NotInO):
        exp_series(ctx, s((-1, 1)), mpq(4))


def test_log_mercator():
    out = log_series(ctx, s((0, 1), (1, 1)), mpq(4))
    assert out == s((1, 1), (2, mpq(-1, 2)), (3, mpq(1, 3)), order=4)


def test_log_needs_positive_unit():
    with pytest.raises(NotPositiveUnit):
        log_series(ctx, s((1, 1)), mpq(4))
    with pytest.raises(NotPositiveUnit):
        log_series(ctx, s((0, -2), (1, 1)), mpq(4))


def test_exp_log_round_trip():
    a = fs((0, 2), (1, 3), (2, -1))
    w = mpq(8)
    assert hs_approx_eq(ctx, log_series(ctx, exp_series(ctx, a, w), w), a)
    u = fs((0, 5), (1, -2))
    assert hs_approx_eq(ctx, exp_series(ctx, log_series(ctx, u, w), w), u)


def test_exp_group_law():
    a, b = fs((1, 2), (2, -3)), fs((0, 1), (1, 1))
    w = mpq(8)
    lhs = exp_series(ctx, hs_add(ctx, a, b), w)
    rhs = hs_mul(ctx, exp_series(ctx, a, w), exp_series(ctx, b, w))
    assert hs_approx_eq(ctx, lhs, rhs)


def test_pow_unit_scalar_constant():
    # 4^(1/2) = 2, through exp((1/2) log 4)
    out = pow_unit_scalar(ctx, make(ctx, [(mpq(0), ctx.float_(4))]), mpq(1, 2), mpq(4))
    assert approx_eq(ctx, out.terms[0][1], ctx.float_(2))


def test_pow_unit_matches_ring_power():
    u = s((0, 1), (1, 1))
    w = mpq(8)
    sq = pow_unit_scalar(ctx, u, mpq(2), w)
    d = hs_sub(ctx, sq, hs_pow_int(ctx, u, 2))
    assert all(not (e < w) or c == 0 for e, c in d.terms)
    assert pow_unit(ctx, u, HS_ZERO, w) == hs_one(ctx)


def test_pow_unit_rejects_bad_exponent():
    with pytest.raises(NotInO):
        pow_unit(ctx, s((0, 1), (1, 1)), s((-1, 1)), mpq(4))


def test_tempered_power_trivial():
    a = fs((1, 2))
    assert tempered_power(ctx, a, mpq(0), mpq(8)) == hs_one(ctx)
    assert tempered_power(ctx, a, mpq(1), mpq(8)) == a


def test_tempered_power_monomial():
    # t^(-1) squared under the tempered power equals the ring square
    a = fs((-1, 1))
    out = tempered_power(ctx, a, mpq(2), mpq(8))
    assert len(out.terms) == 1
    e, c = out.terms[0]
    assert e == mpq(-2)
    assert approx_eq(ctx, c, ctx.float_(1))


def test_tempered_power_sqrt_2t():
    # (2t)^(1/2) = sqrt(2) t^(1/2): head pi(vv)^(1/2) = e^(-1/2) t^(1/2),
    # unit part (2e)^(1/2)
    out = tempered_power(ctx, fs((1, 2)), mpq(1, 2), mpq(8))
    assert len(out.terms) == 1
    e, c = out.terms[0]
    assert e == mpq(1, 2)
    want = ORACLE.sqrt(mpfr(2, precision=400))
    assert abs(ORACLE.sub(c, want)) <= ctx.gctx.mul(ctx.tol, ctx.float_(2))


def test_tempered_power_vv_identity():
    a = fs((-2, 3), (1, 5))
    g = mpq(-3, 2)
    out = tempered_power(ctx, a, g, mpq(10))
    assert vv(ctx, out) == gamma_pow(ctx, vv(ctx, a), g)


def test_tempered_power_integer_consistency():
    a = fs((-1, 3), (0, 1))
    for n in range(-3, 4):
        tp = tempered_power(ctx, a, mpq(n), mpq(10))
        rp = hs_pow_int(ctx, a, n, mpq(10))
        assert hs_approx_eq(ctx, tp, rp, below=mpq(6))


def test_tempered_power_needs_positive():
    with pytest.raises(NotPositive):
        tempered_power(ctx, fs((0, -1)), mpq(1, 2), mpq(8))
    with pytest.raises(NotPositive):
        tempered_power(ctx, HS_ZERO, mpq(1, 2), mpq(8))


def test_tempered_exp():
    a = fs((0, 2), (1, 1))
    # vv(1) = 1 embeds to exponent 1
    assert tempered_exp(ctx, a, hs_one(ctx), mpq(8)) == tempered_power(ctx, a, mpq(1), mpq(8))
    # vv is multiplicative, so the tempered exponential of a product is the
    # iterated power: a^(vv(xy)) = (a^(vv x))^(vv y)
    x, y = fs((2, 3)), fs((1, 5))
    lhs = tempered_exp(ctx, a, hs_mul(ctx, x, y), mpq(8))
    inner = tempered_exp(ctx, a, x, mpq(16))
    rhs = tempered_exp(ctx, inner, y, mpq(8))
    assert hs_approx_eq(ctx, lhs, rhs)
    with pytest.raises(DomainError):
        tempered_exp(ctx, a, HS_ZERO, mpq(8))
    with pytest.raises(DomainError):
        tempered_exp(ctx, hs_one(ctx), x, mpq(8))


def test_no_cancellation_idempotence():
    # vv(b) = vv(b') forces vv(b+b') = vv(b), the idempotence of the tempered
    # exponent under representatives
    b = s((1, 2), (3, -1))
    bp = s((1, 5), (2, 1))
    assert vv(ctx, b) == vv(ctx, bp)
    assert vv(ctx, hs_add(ctx, b, bp)) == vv(ctx, b)


def test_derivative_check_cases():
    assert derivative_check(ctx, fs((-1, 1)), mpq(2), 32, mpq(16))
    assert derivative_check(ctx, fs((0, 2), (1, 1)), mpq(1, 2), 16, mpq(8))
    assert derivative_check(ctx, fs((0, 2), (1, 1)), mpq(1), 32, mpq(16))
    assert derivative_check(ctx, fs((-2, 3), (1, 1)), mpq(-3, 2), 32, mpq(16))
    with pytest.raises(DomainError):
        derivative_check(ctx, fs((0, 2)), mpq(1, 2), 0, mpq(8))
