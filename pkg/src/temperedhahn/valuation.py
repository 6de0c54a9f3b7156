"""Valued-field structure maps on truncated Hahn series.

The signed value group is kept in "log coordinates": a nonzero element is a
pair (sign, q) standing for sign * e^(-q).  All group laws and exponentiation
with scalar exponents are then exact coordinate arithmetic; the transcendental
embedding e^(-q) is computed only on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from gmpy2 import mpq

from .errors import DomainError, InsufficientPrecision, ModeError, NoLeadingTerm, NotInO
from .hahn import HahnSeries, hs_monomial, HS_ZERO, make
from .scalar import (
    NumericContext,
    sc_abs,
    Scalar,
    approx_eq,
    exp_scalar,
    is_exact,
    is_integral,
    log_scalar,
    sc_add,
    sc_div,
    sc_mul,
    sc_neg,
    sc_sgn,
    scalar_from_str,
    scalar_to_str,
)


@dataclass(frozen=True)
class GammaCoord:
    """Element of the signed value group, or its absorbing zero symbol.

    is_zero=True encodes the adjoined zero; otherwise sign is +1 or -1 and q
    is the log coordinate: the element is sign * e^(-q).
    """

    is_zero: bool
    sign: int = 1
    q: Optional[Scalar] = None

    def __repr__(self):
        if self.is_zero:
            return "GammaCoord(zero)"
        return f"GammaCoord(sign={self.sign:+d}, q={self.q})"

    def __eq__(self, other):
        if not isinstance(other, GammaCoord):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.sign == other.sign and self.q == other.q

    def __hash__(self):
        return hash((self.is_zero, self.sign, None if self.q is None else str(self.q)))

    def is_positive(self) -> bool:
        """Membership in the positive cone."""
        return not self.is_zero and self.sign == 1


GAMMA_ZERO = GammaCoord(True)
GAMMA_ONE = GammaCoord(False, 1, mpq(0))


def gamma(sign: int, q: Scalar) -> GammaCoord:
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    return GammaCoord(False, sign, q)


def gamma_mul(ctx: NumericContext, g: GammaCoord, h: GammaCoord) -> GammaCoord:
    if g.is_zero or h.is_zero:
        return GAMMA_ZERO
    return GammaCoord(False, g.sign * h.sign, sc_add(ctx, g.q, h.q))


def gamma_inv(g: GammaCoord) -> GammaCoord:
    if g.is_zero:
        raise DomainError("zero has no inverse in the value group")
    return GammaCoord(False, g.sign, sc_neg(g.q))


def gamma_pow(ctx: NumericContext, g: GammaCoord, e: Scalar) -> GammaCoord:
    """Exponentiation in the value group, exact in coordinates.

    Negative-sign elements admit only integer exponents; the zero symbol only
    positive ones.
    """
    if g.is_zero:
        if e > 0:
            return GAMMA_ZERO
        raise DomainError("zero admits only positive exponents")
    if g.sign == -1:
        if not is_integral(e):
            raise DomainError("negative value-group element with non-integral exponent")
        sign = -1 if int(e) % 2 else 1
        return GammaCoord(False, sign, sc_mul(ctx, g.q, e))
    return GammaCoord(False, 1, sc_mul(ctx, g.q, e))


def embed_gamma(ctx: NumericContext, g: GammaCoord) -> Scalar:
    """The real number sign * e^(-q) this coordinate pair stands for."""
    if g.is_zero:
        return mpq(0)
    if is_exact(g.q) and g.q == 0:
        return mpq(g.sign)
    x = exp_scalar(ctx, sc_neg(ctx.promote(g.q)))
    return sc_mul(ctx, mpq(g.sign), x)


@dataclass(frozen=True)
class RvElement:
    """Leading term c * t^q of a nonzero series, or the adjoined zero."""

    is_zero: bool
    q: Optional[Scalar] = None
    c: Optional[Scalar] = None

    def __repr__(self):
        if self.is_zero:
            return "RvElement(zero)"
        return f"RvElement(q={self.q}, c={self.c})"

    def __eq__(self, other):
        if not isinstance(other, RvElement):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.q == other.q and self.c == other.c

    def __hash__(self):
        return hash((self.is_zero, None if self.q is None else str(self.q),
                     None if self.c is None else str(self.c)))


RV_ZERO = RvElement(True)


def rv_mul(ctx: NumericContext, x: RvElement, y: RvElement) -> RvElement:
    if x.is_zero or y.is_zero:
        return RV_ZERO
    return RvElement(False, sc_add(ctx, x.q, y.q), sc_mul(ctx, x.c, y.c))


def leading(a: HahnSeries) -> RvElement:
    """rv of a series: its leading term as an RvElement; zero for exact 0."""
    if a.terms:
        q, c = a.terms[0]
        return RvElement(False, q, c)
    if a.order is None:
        return RV_ZERO
    raise NoLeadingTerm("truncated series with no visible terms")


def vv(ctx: NumericContext, a: HahnSeries) -> GammaCoord:
    """Signed valuation in log coordinates: (sgn of leading coeff, leading exponent)."""
    r = leading(a)
    if r.is_zero:
        return GAMMA_ZERO
    return GammaCoord(False, sc_sgn(ctx, r.c), r.q)


def ac(ctx: NumericContext, a: HahnSeries) -> Scalar:
    """Angular component: the leading coefficient; 0 for exact zero."""
    r = leading(a)
    if r.is_zero:
        return mpq(0)
    return r.c


def pi(ctx: NumericContext, a: Union[Scalar, GammaCoord]) -> HahnSeries:
    """Diagonal cross-section: the monomial a * t^(-log|a|).

    A GammaCoord (s, q) maps to the monomial s*e^(-q) * t^q, which is the same
    point of the diagonal expressed in coordinates.
    """
    if isinstance(a, GammaCoord):
        if a.is_zero:
            raise DomainError("pi is undefined at zero")
        coeff = embed_gamma(ctx, a)
        return hs_monomial(ctx, a.q, coeff)
    if a == 0:
        raise DomainError("pi is undefined at zero")
    if sc_abs(a) == 1:
        return hs_monomial(ctx, mpq(0), mpq(1) if a > 0 else mpq(-1))
    e = sc_neg(log_scalar(ctx, sc_abs(ctx.promote(a))))
    return hs_monomial(ctx, e, a)


def lg(ctx: NumericContext, a: HahnSeries) -> HahnSeries:
    """Leading-monomial map: the defining pi(vv a) * ac(a) / vv(a) collapses
    algebraically to the leading term a_q t^q; lg(0) = 0."""
    r = leading(a)
    if r.is_zero:
        return HS_ZERO
    return hs_monomial(ctx, r.q, r.c)


def lg_defining_formula(ctx: NumericContext, a: HahnSeries) -> HahnSeries:
    """The literal pi(vv a) * ac(a)/embed(vv a); float-mode consistency route."""
    g = vv(ctx, a)
    if g.is_zero:
        return HS_ZERO
    head = pi(ctx, g)
    ratio = sc_div(ctx, ac(ctx, a), embed_gamma(ctx, g))
    return make(ctx, [(e, sc_mul(ctx, c, ratio)) for e, c in head.terms], head.order)


def av(ctx: NumericContext, a: HahnSeries):
    """Binary coordinates (angular component, signed valuation)."""
    return (ac(ctx, a), vv(ctx, a))


def residue(ctx: NumericContext, a: HahnSeries) -> Scalar:
    """Coefficient at exponent zero; requires membership in the valuation ring
    and a truncation order above zero."""
    v = a.terms[0][0] if a.terms else None
    if v is not None and v < 0:
        raise NotInO(f"least exponent {v} < 0")
    if a.order is not None and not a.order > 0:
        raise InsufficientPrecision("truncation order <= 0 hides the residue")
    for e, c in a.terms:
        if is_exact(e):
            if e == 0:
                return c
        elif sc_abs(e) <= ctx.tol:
            return c
    return mpq(0)


@dataclass(frozen=True)
class Membership:
    in_O: bool
    in_M: bool
    in_U: bool
    in_Uplus: bool
    in_KD: bool
    in_Delta: bool


def _exponent_is_zero(ctx: NumericContext, e: Scalar) -> bool:
    if is_exact(e):
        return e == 0
    return sc_abs(e) <= ctx.tol


def classify(ctx: NumericContext, a: HahnSeries) -> Membership:
    """Membership flags for the valuation ring, maximal ideal, units, positive
    units, the monomial set, and the diagonal."""
    if a.is_zero():
        return Membership(True, True, False, False, True, False)
    r = leading(a)  # raises NoLeadingTerm on empty truncated input
    in_O = r.q >= 0 or _exponent_is_zero(ctx, r.q)
    in_U = _exponent_is_zero(ctx, r.q)
    in_M = in_O and not in_U
    in_Uplus = in_U and sc_sgn(ctx, r.c) > 0
    in_KD = len(a.terms) == 1
    in_Delta = False
    if in_KD:
        if _exponent_is_zero(ctx, r.q):
            in_Delta = sc_abs(r.c) == 1 if is_exact(r.c) else approx_eq(ctx, sc_abs(r.c), mpq(1))
        elif is_exact(r.c) and is_exact(r.q):
            raise ModeError("diagonal membership at a nonzero exact exponent needs float mode")
        else:
            want = exp_scalar(ctx, sc_neg(ctx.promote(r.q)))
            in_Delta = approx_eq(ctx, sc_abs(ctx.promote(r.c)), want)
    return Membership(in_O, in_M, in_U, in_Uplus, in_KD, in_Delta)


def gamma_to_json(g: GammaCoord):
    if g.is_zero:
        return "zero"
    return {"sign": g.sign, "q": scalar_to_str(g.q)}


def gamma_from_json(ctx: NumericContext, obj) -> GammaCoord:
    if obj == "zero":
        return GAMMA_ZERO
    return gamma(int(obj["sign"]), scalar_from_str(ctx, str(obj["q"])))


def rv_to_json(r: RvElement):
    if r.is_zero:
        return "zero"
    return {"q": scalar_to_str(r.q), "c": scalar_to_str(r.c)}
