import pytest
from gmpy2 import mpq

from temperedhahn.errors import ParseError
from temperedhahn.exprparse import parse_series_expr
from temperedhahn.hahn import hs_approx_eq, hs_invert, hs_mul, hs_one, make
from temperedhahn.scalar import NumericContext
from temperedhahn.tempered import tempered_power

ctx = NumericContext()


def s(*pairs, order=None):
    return make(ctx, [(mpq(e), mpq(c)) for e, c in pairs], None if order is None else mpq(order))


def test_basic_arithmetic():
    assert parse_series_expr(ctx, "(1+t)*(1-t)") == s((0, 1), (2, -1))
    assert parse_series_expr(ctx, "t^(1/2) + 3") == s((0, 3), (mpq(1, 2), 1))
    assert parse_series_expr(ctx, "2 - 3*t") == s((0, 2), (1, -3))
    assert parse_series_expr(ctx, "-t^(-1)") == s((-1, -1))
    assert parse_series_expr(ctx, "t^3") == s((3, 1))
    assert parse_series_expr(ctx, "(1+t)^2") == s((0, 1), (1, 2), (2, 1))
    assert parse_series_expr(ctx, "2^(-2)") == s((0, mpq(1, 4)))


def test_division_matches_invert_oracle():
    out = parse_series_expr(ctx, "1/(1-t)")
    want = hs_invert(ctx, s((0, 1), (1, -1)), ctx.trunc)
    assert out == want
    assert out.order == ctx.trunc


def test_precedence():
    assert parse_series_expr(ctx, "1+2*t^2") == s((0, 1), (2, 2))
    assert parse_series_expr(ctx, "(1+2)*t") == s((1, 3))


def test_functions():
    e = parse_series_expr(ctx, "exp(t)")
    assert e.terms[:3] == ((mpq(0), mpq(1)), (mpq(1), mpq(1)), (mpq(2), mpq(1, 2)))
    lo = parse_series_expr(ctx, "log(1+t)")
    assert lo.terms[:2] == ((mpq(1), mpq(1)), (mpq(2), mpq(-1, 2)))
    assert parse_series_expr(ctx, "lg(4*t + t^2)") == s((1, 4))
    assert parse_series_expr(ctx, "ac(5*t - t^2)") == s((0, 5))
    got = parse_series_expr(ctx, "tpow(2*t; ~0.5)", float_mode=True)
    want = tempered_power(ctx, make(ctx, [(mpq(1), ctx.float_(2))]), ctx.float_("0.5"), ctx.trunc)
    assert hs_approx_eq(ctx, got, want)


def test_vv_renders_as_diagonal_monomial():
    out = parse_series_expr(ctx, "vv(3*t^(2))")
    assert len(out.terms) == 1
    assert out.terms[0][0] == mpq(2)


def test_float_mode_literals():
    out = parse_series_expr(ctx, "1/3", float_mode=True)
    assert not out.is_zero()
    assert out.terms[0][1].precision == 256


def test_parse_errors_carry_offsets():
    for text, offset in [("t^", 2), ("1+", 2), ("(1", 2), ("foo(2)", 0), ("1 @ 2", 2)]:
        with pytest.raises(ParseError) as err:
            parse_series_expr(ctx, text)
        assert err.value.offset == offset
    with pytest.raises(ParseError):
        parse_series_expr(ctx, "")
    with pytest.raises(ParseError):
        parse_series_expr(ctx, "tpow(t)")
    with pytest.raises(ParseError):
        parse_series_expr(ctx, "exp(t; 1)")
    with pytest.raises(ParseError):
        parse_series_expr(ctx, "tpow(t; 1+t)")  # exponent must be a constant
