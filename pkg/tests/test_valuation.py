import gmpy2
import pytest
from gmpy2 import mpfr, mpq

from temperedhahn.errors import (
    DomainError,
    InsufficientPrecision,
    ModeError,
    NoLeadingTerm,
    NotInO,
)
from temperedhahn.hahn import HS_ZERO, hs_mul, make
from temperedhahn.scalar import NumericContext, approx_eq, log_scalar, sc_neg
from temperedhahn.valuation import (
    GAMMA_ONE,
    GAMMA_ZERO,
    RV_ZERO,
    ac,
    av,
    classify,
    embed_gamma,
    gamma,
    gamma_from_json,
    gamma_inv,
    gamma_mul,
    gamma_pow,
    gamma_to_json,
    leading,
    lg,
    lg_defining_formula,
    pi,
    residue,
    rv_mul,
    vv,
)

ctx = NumericContext()

ORACLE = gmpy2.context(precision=400)


def s(*pairs, order=None):
    return make(ctx, [(mpq(e), mpq(c)) for e, c in pairs], None if order is None else mpq(order))


def test_gamma_group():
    g = gamma(1, mpq(2))
    h = gamma(-1, mpq(-3))
    assert gamma_mul(ctx, g, h) == gamma(-1, mpq(-1))
    assert gamma_mul(ctx, g, gamma_inv(g)) == GAMMA_ONE
    assert gamma_mul(ctx, g, GAMMA_ZERO) == GAMMA_ZERO
    with pytest.raises(DomainError):
        gamma_inv(GAMMA_ZERO)


def test_gamma_pow():
    g = gamma(1, mpq(3))
    assert gamma_pow(ctx, g, mpq(1, 2)) == gamma(1, mpq(3, 2))
    n = gamma(-1, mpq(2))
    assert gamma_pow(ctx, n, mpq(3)) == gamma(-1, mpq(6))
    assert gamma_pow(ctx, n, mpq(2)) == gamma(1, mpq(4))
    with pytest.raises(DomainError):
        gamma_pow(ctx, n, mpq(1, 2))
    assert gamma_pow(ctx, GAMMA_ZERO, mpq(2)) == GAMMA_ZERO
    with pytest.raises(DomainError):
        gamma_pow(ctx, GAMMA_ZERO, mpq(-1))


def test_embed_gamma_oracle():
    # sign * e^(-q), against an independent high-precision exponential
    g = gamma(-1, ctx.float_("1.5"))
    got = embed_gamma(ctx, g)
    want = ORACLE.mul(mpfr(-1), ORACLE.exp(mpfr("-1.5", precision=400)))
    assert abs(ORACLE.sub(got, want)) <= ctx.tol
    assert embed_gamma(ctx, GAMMA_ONE) == 1
    assert embed_gamma(ctx, GAMMA_ZERO) == 0


def test_vv_ac():
    a = s((-2, -3), (1, 5))
    assert vv(ctx, a) == gamma(-1, mpq(-2))
    assert ac(ctx, a) == mpq(-3)
    assert vv(ctx, HS_ZERO) == GAMMA_ZERO
    assert ac(ctx, HS_ZERO) == 0
    assert av(ctx, a) == (mpq(-3), gamma(-1, mpq(-2)))


def test_vv_multiplicative():
    a = s((1, 2), (2, 1))
    b = s((-3, -1), (0, 4))
    assert vv(ctx, hs_mul(ctx, a, b)) == gamma_mul(ctx, vv(ctx, a), vv(ctx, b))


def test_leading_and_rv():
    a = s((mpq(1, 2), 3), (2, 1))
    r = leading(a)
    assert (r.q, r.c) == (mpq(1, 2), mpq(3))
    assert leading(HS_ZERO) == RV_ZERO
    with pytest.raises(NoLeadingTerm):
        leading(make(ctx, [], mpq(1)))
    r2 = leading(s((1, 2)))
    assert rv_mul(ctx, r, r2).q == mpq(3, 2)
    assert rv_mul(ctx, r, RV_ZERO) == RV_ZERO


def test_pi_scalar():
    # pi(a) = a * t^(-log|a|) lies on the diagonal
    a = ctx.float_(5)
    m = pi(ctx, a)
    assert len(m.terms) == 1
    e, c = m.terms[0]
    assert c == a
    assert approx_eq(ctx, e, sc_neg(log_scalar(ctx, a)))
    assert pi(ctx, mpq(-1)).terms == ((mpq(0), mpq(-1)),)
    with pytest.raises(DomainError):
        pi(ctx, mpq(0))


def test_pi_gamma_sections():
    g = gamma(1, ctx.float_("0.75"))
    m = pi(ctx, g)
    assert vv(ctx, m) == g
    assert approx_eq(ctx, ac(ctx, m), embed_gamma(ctx, g))


def test_lg():
    a = s((-1, 4), (0, 2))
    assert lg(ctx, a) == s((-1, 4))
    assert lg(ctx, lg(ctx, a)) == lg(ctx, a)
    assert lg(ctx, HS_ZERO).is_zero()


def test_lg_defining_formula_agrees():
    f = make(ctx, [(mpq(-2), ctx.float_(3)), (mpq(1), ctx.float_(-7))])
    lit = lg_defining_formula(ctx, f)
    direct = lg(ctx, f)
    assert len(lit.terms) == 1
    (e1, c1), (e2, c2) = lit.terms[0], direct.terms[0]
    assert e1 == e2
    assert approx_eq(ctx, c1, c2)


def test_residue():
    assert residue(ctx, s((0, 5), (1, 2))) == mpq(5)
    assert residue(ctx, s((1, 2))) == 0
    with pytest.raises(NotInO):
        residue(ctx, s((-1, 1)))
    with pytest.raises(InsufficientPrecision):
        residue(ctx, make(ctx, [], mpq(0)))


def test_classify():
    m = classify(ctx, s((1, 2), (2, 1)))
    assert (m.in_O, m.in_M, m.in_U, m.in_Uplus) == (True, True, False, False)
    u = classify(ctx, s((0, 3), (1, 1)))
    assert (u.in_O, u.in_M, u.in_U, u.in_Uplus) == (True, False, True, True)
    neg = classify(ctx, s((0, -3)))
    assert neg.in_U and not neg.in_Uplus
    z = classify(ctx, HS_ZERO)
    assert z.in_O and z.in_M and z.in_KD and not z.in_U
    assert classify(ctx, s((0, 1))).in_Delta
    assert not classify(ctx, s((0, 2))).in_Delta
    with pytest.raises(ModeError):
        classify(ctx, s((2, 3)))  # exact monomial off the unit circle
    g = gamma(1, ctx.float_("1.25"))
    assert classify(ctx, pi(ctx, g)).in_Delta


def test_gamma_json_round_trip():
    for g in (GAMMA_ZERO, gamma(1, mpq(3, 2)), gamma(-1, mpq(-5))):
        assert gamma_from_json(ctx, gamma_to_json(g)) == g
