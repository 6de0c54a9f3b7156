"""Class semiring of pairs (dimension, Euler characteristic), its graded
polynomial extension, and a small cell calculus grounding the named constants.

A class is stored as the pair (dim, chi) only; the cell calculus exists so
that constants like Q = K+ x (0,1) u K- x (-1,0) are computed from first
principles (chi of a d-cell is (-1)^d) rather than hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import DomainError, ParseError


@dataclass(frozen=True, order=True)
class OClass:
    """Element of the class semiring: underlying set ({0} x N) u (N+ x Z)."""

    dim: int
    chi: int

    def __post_init__(self):
        if self.dim < 0:
            raise DomainError(f"dimension must be a natural number, got {self.dim}")
        if self.dim == 0 and self.chi < 0:
            raise DomainError(f"dimension-0 classes are finite sets: chi must be >= 0, got {self.chi}")

    def is_zero(self) -> bool:
        return self.dim == 0 and self.chi == 0

    def __repr__(self):
        return f"({self.dim},{self.chi})"


O_ZERO = OClass(0, 0)
O_ONE = OClass(0, 1)


def oclass_add(x: OClass, y: OClass) -> OClass:
    return OClass(max(x.dim, y.dim), x.chi + y.chi)


def oclass_mul(x: OClass, y: OClass) -> OClass:
    if x.is_zero() or y.is_zero():
        return O_ZERO  # the empty set absorbs
    return OClass(x.dim + y.dim, x.chi * y.chi)


def oclass_pow(x: OClass, n: int) -> OClass:
    out = O_ONE
    for _ in range(n):
        out = oclass_mul(out, x)
    return out


def oclass_from_pair(pair) -> OClass:
    try:
        d, c = pair
        return OClass(int(d), int(c))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad class pair {pair!r}: {exc}") from None


# ---------------------------------------------------------------------------
# Cell calculus


class CellExpr:
    """Tiny expression tree of cells, products and formally disjoint unions."""

    __slots__ = ()


class Point(CellExpr):
    __slots__ = ()


class OpenInterval(CellExpr):
    __slots__ = ()


class PosRay(CellExpr):
    __slots__ = ()


class NegRay(CellExpr):
    __slots__ = ()


@dataclass(frozen=True)
class Prod(CellExpr):
    left: CellExpr
    right: CellExpr


@dataclass(frozen=True)
class DisjUnion(CellExpr):
    left: CellExpr
    right: CellExpr


# Named constants: Q+ = K+ x (0,1), Q- = K- x (-1,0), Q = Q+ u Q-,
# Lambda = K* x K*.
Q_PLUS = Prod(PosRay(), OpenInterval())
Q_MINUS = Prod(NegRay(), OpenInterval())
Q_CELL = DisjUnion(Q_PLUS, Q_MINUS)
LAMBDA_CELL = Prod(DisjUnion(PosRay(), NegRay()), DisjUnion(PosRay(), NegRay()))


def measure(e: CellExpr) -> OClass:
    """Semiring morphism from the cell calculus: d-cells measure ((d, (-1)^d))."""
    if isinstance(e, Point):
        return OClass(0, 1)
    if isinstance(e, (OpenInterval, PosRay, NegRay)):
        return OClass(1, -1)
    if isinstance(e, Prod):
        return oclass_mul(measure(e.left), measure(e.right))
    if isinstance(e, DisjUnion):
        return oclass_add(measure(e.left), measure(e.right))
    raise DomainError(f"not a cell expression: {e!r}")


# The class of Q, used by the blowup calculus: (2, 2).
Q_CLASS = measure(Q_CELL)


# ---------------------------------------------------------------------------
# Graded classes


class LambdaClass:
    """Finitely supported map from grading level to OClass (no zero values).

    The graded semiring is the polynomial semiring over the class semiring;
    levels are the exponents.
    """

    __slots__ = ("levels",)

    def __init__(self, levels: Dict[int, OClass]):
        clean = {}
        for k, v in levels.items():
            k = int(k)
            if k < 0:
                raise DomainError(f"levels are natural numbers, got {k}")
            if not isinstance(v, OClass):
                v = oclass_from_pair(v)
            if not v.is_zero():
                clean[k] = v
        self.levels = dict(sorted(clean.items()))

    def is_zero(self) -> bool:
        return not self.levels

    def top(self) -> int:
        """Largest stored level; -1 for the zero class."""
        return max(self.levels) if self.levels else -1

    def level(self, k: int) -> OClass:
        return self.levels.get(k, O_ZERO)

    def in_star_leq(self, n: int) -> bool:
        return self.top() == n

    def __eq__(self, other):
        if not isinstance(other, LambdaClass):
            return NotImplemented
        return self.levels == other.levels

    def __hash__(self):
        return hash(tuple(self.levels.items()))

    def __repr__(self):
        if not self.levels:
            return "LambdaClass(0)"
        inner = ", ".join(f"{k}: {v}" for k, v in self.levels.items())
        return f"LambdaClass({{{inner}}})"


LAMBDA_ZERO = LambdaClass({})


def lambda_single(level: int, cls: OClass) -> LambdaClass:
    return LambdaClass({level: cls})


def lambda_add(u: LambdaClass, v: LambdaClass) -> LambdaClass:
    out = dict(u.levels)
    for k, val in v.levels.items():
        out[k] = oclass_add(out.get(k, O_ZERO), val)
    return LambdaClass(out)


def lambda_mul(u: LambdaClass, v: LambdaClass) -> LambdaClass:
    out: Dict[int, OClass] = {}
    for i, a in u.levels.items():
        for j, b in v.levels.items():
            k = i + j
            out[k] = oclass_add(out.get(k, O_ZERO), oclass_mul(a, b))
    return LambdaClass(out)


def chi_alt(u: LambdaClass) -> int:
    """Alternating Euler characteristic: sum over levels of (-1)^i chi(U_i)."""
    return sum((-1) ** i * v.chi for i, v in u.levels.items())


def signature(u: LambdaClass) -> List[Tuple[int, int]]:
    """Dense (dim, chi) list from level 0 to the top level; determines the class."""
    if u.is_zero():
        return []
    return [(u.level(i).dim, u.level(i).chi) for i in range(u.top() + 1)]


def lambda_to_json(u: LambdaClass) -> dict:
    return {"levels": {str(k): [v.dim, v.chi] for k, v in u.levels.items()}}


def lambda_from_json(obj) -> LambdaClass:
    if not isinstance(obj, dict) or "levels" not in obj:
        raise ParseError("graded class JSON must be an object with a 'levels' field")
    try:
        return LambdaClass({int(k): oclass_from_pair(v) for k, v in obj["levels"].items()})
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad graded class JSON: {exc}") from None
