"""Two-backend number tower: exact rationals and arbitrary-precision floats.

A Scalar is either a gmpy2.mpq (exact mode) or a gmpy2.mpfr (float mode).
Exact values are always normalized (gcd-reduced, positive denominator) by
mpq itself.  Float values are finite; constructors reject NaN/inf.  Mixing
the two modes in an arithmetic operation promotes to float at the ambient
precision of the NumericContext, which is always passed explicitly.

exp/log are computed in-house by argument reduction plus Taylor/atanh
summation at precision P + guard bits, then rounded to P, so results do not
depend on any platform libm.
"""

from __future__ import annotations

from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import AmbiguousSign, DivisionByZero, DomainError, ModeError, ParseError

Scalar = Union[mpq, mpfr]

_LN2_CACHE: dict[int, mpfr] = {}


def is_exact(x: Scalar) -> bool:
    return isinstance(x, (mpq, int))


class NumericContext:
    """Ambient precision, comparison tolerance and default truncation order.

    tol is 2^(-ceil(3P/4)): a wide guard band below working precision so that
    rounding accumulated across series pipelines never trips a comparison.
    """

    def __init__(self, precision: int = 256, trunc: int = 32, guard: int = 64):
        if precision < 64:
            raise DomainError(f"precision must be >= 64, got {precision}")
        self.precision = precision
        self.guard = guard
        self.tol = mpfr(2, precision=precision) ** (-((3 * precision + 3) // 4))
        self.trunc: Scalar = mpq(trunc)
        if not self.trunc > 0:
            raise DomainError("default truncation order must be positive")
        self.gctx = gmpy2.context(precision=precision)
        self.hictx = gmpy2.context(precision=precision + guard)

    def exact(self, p, q=1) -> Scalar:
        return mpq(p, q)

    def float_(self, x) -> Scalar:
        v = mpfr(x, precision=self.precision)
        if not gmpy2.is_finite(v):
            raise DomainError(f"non-finite float value {x!r}")
        return v

    def promote(self, x: Scalar) -> mpfr:
        """Force a scalar into float mode at ambient precision."""
        if is_exact(x):
            return self.gctx.div(mpfr(x.numerator, precision=self.precision + self.guard),
                                 mpfr(x.denominator, precision=self.precision + self.guard))
        return x

    def __repr__(self):
        return f"NumericContext(precision={self.precision}, trunc={self.trunc})"


def sc_add(ctx: NumericContext, x: Scalar, y: Scalar) -> Scalar:
    if is_exact(x) and is_exact(y):
        return x + y
    return ctx.gctx.add(x, y)


def sc_sub(ctx: NumericContext, x: Scalar, y: Scalar) -> Scalar:
    if is_exact(x) and is_exact(y):
        return x - y
    return ctx.gctx.sub(x, y)


def sc_mul(ctx: NumericContext, x: Scalar, y: Scalar) -> Scalar:
    if is_exact(x) and is_exact(y):
        return x * y
    return ctx.gctx.mul(x, y)


def sc_div(ctx: NumericContext, x: Scalar, y: Scalar) -> Scalar:
    if is_exact(y):
        if y == 0:
            raise DivisionByZero("exact division by zero")
    elif sc_abs(y) <= ctx.tol:
        raise DivisionByZero("float divisor within tolerance of zero")
    if is_exact(x) and is_exact(y):
        return x / y
    return ctx.gctx.div(x, y)


_SIGN_CTX: dict[int, gmpy2.context] = {}


def _sign_ctx(prec: int) -> gmpy2.context:
    # unary minus/abs through Python operators round at the *default* thread
    # context (53 bits); a context at the operand's own precision is lossless
    got = _SIGN_CTX.get(prec)
    if got is None:
        got = gmpy2.context(precision=prec)
        _SIGN_CTX[prec] = got
    return got


def sc_neg(x: Scalar) -> Scalar:
    if is_exact(x):
        return -x
    return _sign_ctx(x.precision).minus(x)


def sc_abs(x: Scalar) -> Scalar:
    if is_exact(x):
        return abs(x)
    return _sign_ctx(x.precision).abs(x)


def sc_sgn(ctx: NumericContext, x: Scalar) -> int:
    """Sign of x: -1, 0 or +1.  Demanding a sign of a float that is within
    tolerance of zero (but not exactly zero) is refused."""
    if x == 0:
        return 0
    if not is_exact(x) and sc_abs(x) <= ctx.tol:
        raise AmbiguousSign(f"float value {x} within tolerance of zero")
    return 1 if x > 0 else -1


def sc_cmp_exact(x: Scalar, y: Scalar) -> int:
    if x == y:
        return 0
    return 1 if x > y else -1


def approx_eq(ctx: NumericContext, x: Scalar, y: Scalar) -> bool:
    """Exact/exact compares exactly; otherwise |x-y| <= tol*max(1,|x|,|y|)."""
    if is_exact(x) and is_exact(y):
        return x == y
    d = sc_abs(ctx.gctx.sub(x, y))
    scale = max(mpfr(1), sc_abs(ctx.promote(x)), sc_abs(ctx.promote(y)))
    return d <= ctx.gctx.mul(ctx.tol, scale)


def _ln2(hictx) -> mpfr:
    """ln 2 = 2*atanh(1/3), cached per working precision."""
    prec = hictx.precision
    got = _LN2_CACHE.get(prec)
    if got is None:
        got = _atanh_small(hictx, hictx.div(mpfr(1, precision=prec), mpfr(3, precision=prec)))
        got = hictx.mul(got, mpfr(2))
        _LN2_CACHE[prec] = got
    return got


def _atanh_small(hictx, z: mpfr) -> mpfr:
    # atanh(z) = sum z^(2k+1)/(2k+1), |z| <= 1/3 so ~3.17 bits per term
    z2 = hictx.mul(z, z)
    term = z
    total = z
    k = 1
    cutoff = mpfr(2, precision=hictx.precision) ** (-(hictx.precision + 8))
    while True:
        term = hictx.mul(term, z2)
        inc = hictx.div(term, mpfr(2 * k + 1))
        total = hictx.add(total, inc)
        if sc_abs(inc) <= cutoff:
            return total
        k += 1


def _exp_hi(hictx, x: mpfr) -> mpfr:
    # halve the argument until |x| < 1/4, Taylor, then square back up
    m = 0
    y = x
    quarter = mpfr("0.25")
    while sc_abs(y) >= quarter:
        y = hictx.div(y, mpfr(2))
        m += 1
    term = mpfr(1, precision=hictx.precision)
    total = mpfr(1, precision=hictx.precision)
    k = 1
    cutoff = mpfr(2, precision=hictx.precision) ** (-(hictx.precision + 8))
    while True:
        term = hictx.div(hictx.mul(term, y), mpfr(k))
        total = hictx.add(total, term)
        if sc_abs(term) <= cutoff:
            break
        k += 1
    for _ in range(m):
        total = hictx.mul(total, total)
    return total


def _log_hi(hictx, x: mpfr) -> mpfr:
    # x = f * 2^e with f in [0.5, 1): log x = e*ln2 + 2*atanh((f-1)/(f+1))
    e, f = hictx.frexp(x)  # module-level frexp would round at the default context
    z = hictx.div(hictx.sub(f, mpfr(1)), hictx.add(f, mpfr(1)))
    lf = hictx.mul(_atanh_small(hictx, z), mpfr(2))
    return hictx.add(hictx.mul(mpfr(e), _ln2(hictx)), lf)


def exp_scalar(ctx: NumericContext, x: Scalar) -> Scalar:
    """Real exponential.  Exact mode only for x = 0 (exp x is irrational otherwise)."""
    if is_exact(x):
        if x == 0:
            return mpq(1)
        raise ModeError("exp of a nonzero exact scalar is irrational; promote to float first")
    hi = _exp_hi(ctx.hictx, mpfr(x, precision=ctx.precision + ctx.guard))
    return mpfr(hi, precision=ctx.precision)


def log_scalar(ctx: NumericContext, x: Scalar) -> Scalar:
    """Real logarithm of a positive scalar.  Exact mode only for x = 1."""
    if x <= 0:
        raise DomainError(f"log of non-positive value {x}")
    if is_exact(x):
        if x == 1:
            return mpq(0)
        raise ModeError("log of an exact scalar != 1 is irrational; promote to float first")
    hi = _log_hi(ctx.hictx, mpfr(x, precision=ctx.precision + ctx.guard))
    return mpfr(hi, precision=ctx.precision)


def sc_pow_int(ctx: NumericContext, x: Scalar, n: int) -> Scalar:
    if n == 0:
        return mpq(1)
    if n < 0:
        return sc_div(ctx, mpq(1), sc_pow_int(ctx, x, -n))
    out = x
    for _ in range(n - 1):
        out = sc_mul(ctx, out, x)
    return out


def is_integral(x: Scalar) -> bool:
    if is_exact(x):
        return x.denominator == 1
    return gmpy2.is_integer(x)


def sc_floor(x: Scalar) -> int:
    if is_exact(x):
        return int(x.numerator // x.denominator)
    return int(gmpy2.floor(x))


def sc_ceil(x: Scalar) -> int:
    return -sc_floor(sc_neg(x))


def scalar_to_str(x: Scalar) -> str:
    """Text form: exact as "p/q" or an integer literal, float with a "~" prefix."""
    if is_exact(x):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return "~" + str(x)


def scalar_from_str(ctx: NumericContext, s: str) -> Scalar:
    s = s.strip()
    try:
        if s.startswith("~"):
            return ctx.float_(s[1:])
        return mpq(s)
    except (ValueError, ZeroDivisionError, DomainError) as exc:
        raise ParseError(f"bad scalar literal {s!r}: {exc}") from None
