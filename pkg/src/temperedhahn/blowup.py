"""Class-level blowup calculus: single steps, the constructive even-up
planner, the blowup congruence, the conjoined double semiring and the
integration map to the integers.

A blowup step replaces a locus C at level n by C x Q at level n and drops a
copy of C to level n-1; chi(Q) = 2 with one sign flip makes the alternating
Euler characteristic invariant.  Because the class semiring has no
subtraction, a step carries an explicit remainder class instead of a
difference: locus + remainder must reproduce the level being blown up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import InvalidStep, ParseError, PreconditionError
from .euler import (
    LambdaClass,
    OClass,
    O_ZERO,
    Q_CLASS,
    chi_alt,
    oclass_add,
    oclass_from_pair,
    oclass_mul,
    oclass_pow,
    signature,
)


@dataclass(frozen=True)
class BlowupStep:
    level: int
    locus: OClass
    remainder: OClass

    def __post_init__(self):
        if self.level < 1:
            raise InvalidStep("level-0 blowups are the identity; steps start at level 1")
        if self.locus.is_zero():
            raise InvalidStep("locus must be a nonzero class")


@dataclass(frozen=True)
class BlowupPlan:
    steps: Tuple[BlowupStep, ...]

    def __len__(self):
        return len(self.steps)


def blowup_apply(v: LambdaClass, s: BlowupStep) -> LambdaClass:
    """One blowup: level n -> remainder + locus*Q, level n-1 -> +locus."""
    n = s.level
    vn = v.level(n)
    if vn.is_zero():
        raise InvalidStep(f"level {n} of the class is empty")
    if oclass_add(s.locus, s.remainder) != vn:
        raise InvalidStep(
            f"locus {s.locus} + remainder {s.remainder} does not reproduce level {n} = {vn}")
    out = dict(v.levels)
    out[n] = oclass_add(s.remainder, oclass_mul(s.locus, Q_CLASS))
    out[n - 1] = oclass_add(v.level(n - 1), s.locus)
    return LambdaClass(out)


def plan_apply(v: LambdaClass, plan: BlowupPlan) -> LambdaClass:
    for s in plan.steps:
        v = blowup_apply(v, s)
    return v


def _chain_sum(length: int) -> int:
    # 1 + 2 + ... + 2^(length-1)
    return (1 << length) - 1


def _stage_steps(current: LambdaClass, level: int, increment: int, l: int) -> List[BlowupStep]:
    """Blowups realizing one level of the even-up construction.

    A cell A is blown up repeatedly (A, then A x Q, then A x Q^2, ...) to push
    the level's dimension to l; extra points (chi +1) and open intervals
    (chi -1) make the chi increment come out to `increment` exactly.
    """
    steps: List[BlowupStep] = []
    if l % 2 == 0:
        a = OClass(0, 1)       # a point
        chain_len = l // 2
        chain_total = _chain_sum(chain_len)
    else:
        a = OClass(1, -1)      # a 1-cell
        chain_len = (l - 1) // 2
        chain_total = -_chain_sum(chain_len)
    # increment = chain_total + #points - #intervals, minimal nonnegative counts
    residual = increment - chain_total
    n_points = residual if residual >= 0 else 0
    n_intervals = -residual if residual < 0 else 0

    running = current.level(level)
    locus = a
    for _ in range(chain_len):
        remainder = OClass(running.dim, running.chi - locus.chi)
        steps.append(BlowupStep(level, locus, remainder))
        running = oclass_add(remainder, oclass_mul(locus, Q_CLASS))
        locus = oclass_mul(locus, Q_CLASS)
    if n_points or n_intervals:
        bc = OClass(1 if n_intervals else 0, n_points - n_intervals)
        remainder = OClass(running.dim, running.chi - bc.chi)
        steps.append(BlowupStep(level, bc, remainder))
    return steps


def evenup_plan(u: LambdaClass, m: Sequence[int], l: int) -> BlowupPlan:
    """Plan whose application to u has signature
    ((l-2, m_0 + chi(u_0)), (l, m_1 + chi(u_1)), ..., (l, m_n + chi(u_n))).

    Preconditions: top(u) = n > 0, len(m) = n+1, the alternating sum of m
    vanishes, and l >= max dim(u_i) + 2.
    """
    n = u.top()
    if n <= 0:
        raise PreconditionError("top level must be positive")
    m = [int(x) for x in m]
    if len(m) != n + 1:
        raise PreconditionError(f"need {n + 1} chi increments, got {len(m)}")
    if sum((-1) ** i * x for i, x in enumerate(m)) != 0:
        raise PreconditionError("alternating sum of the chi increments must vanish")
    if l < max(v.dim for v in u.levels.values()) + 2:
        raise PreconditionError("l must be at least the largest dimension plus 2")

    steps: List[BlowupStep] = []
    current = u
    remaining = list(m)
    top_class = u.level(n)
    # normalization: one point blowup so the top level has dimension >= 2 and
    # the level below is nonempty
    if top_class.dim < 2 or u.level(n - 1).is_zero():
        point = OClass(0, 1)
        step = BlowupStep(n, point, OClass(top_class.dim, top_class.chi - 1))
        steps.append(step)
        current = blowup_apply(current, step)
        remaining[n] -= 1
        remaining[n - 1] -= 1
    # per level, descending; each stage spills its increment one level down
    increment = remaining[n]
    for level in range(n, 0, -1):
        stage = _stage_steps(current, level, increment, l)
        steps.extend(stage)
        for s in stage:
            current = blowup_apply(current, s)
        increment = remaining[level - 1] - increment
    return BlowupPlan(tuple(steps))


def evenup_target_signature(u: LambdaClass, m: Sequence[int], l: int) -> List[Tuple[int, int]]:
    """The signature the even-up construction promises, straight from its statement."""
    n = u.top()
    out = [(l - 2, int(m[0]) + u.level(0).chi)]
    out.extend((l, int(m[i]) + u.level(i).chi) for i in range(1, n + 1))
    return out


def isp_related(u: LambdaClass, v: LambdaClass) -> bool:
    """Blowup congruence: equal top level and, above level 0, equal
    alternating Euler characteristic.  At level 0 only identical classes are
    related, and the zero class is related only to itself."""
    if u.is_zero() or v.is_zero():
        return u.is_zero() and v.is_zero()
    if u.top() != v.top():
        return False
    if u.top() == 0:
        return u.level(0) == v.level(0)
    return chi_alt(u) == chi_alt(v)


# ---------------------------------------------------------------------------
# The conjoined double semiring


@dataclass(frozen=True)
class ODouble:
    """Two copies of the class semiring conjoined along the naturals.

    tag is "shared" (the common dim-0 part: a natural number), "plain" (the
    non-dominating copy, dim >= 1) or "dom" (the dominating copy, level
    n >= 1 with an alternating chi).
    """

    tag: str
    a: int
    b: int = 0

    @staticmethod
    def shared(k: int) -> "ODouble":
        if k < 0:
            raise ParseError(f"shared values are naturals, got {k}")
        return ODouble("shared", k)

    @staticmethod
    def plain(dim: int, chi: int) -> "ODouble":
        if dim == 0:
            return ODouble.shared(chi)
        return ODouble("plain", dim, chi)

    @staticmethod
    def dom(n: int, chi: int) -> "ODouble":
        if n == 0:
            return ODouble.shared(chi)
        return ODouble("dom", n, chi)

    def __repr__(self):
        if self.tag == "shared":
            return f"Shared({self.a})"
        if self.tag == "plain":
            return f"Plain({self.a},{self.b})"
        return f"Dom({self.a},{self.b})"


def to_odouble(u: LambdaClass) -> ODouble:
    """Quotient map by the blowup congruence; a semiring homomorphism."""
    if u.is_zero():
        return ODouble.shared(0)
    if u.top() == 0:
        lvl = u.level(0)
        return ODouble.plain(lvl.dim, lvl.chi)
    return ODouble.dom(u.top(), chi_alt(u))


def _as_pair(x: ODouble) -> Tuple[int, int]:
    if x.tag == "shared":
        return (0, x.a)
    return (x.a, x.b)


def odouble_add(x: ODouble, y: ODouble) -> ODouble:
    (a, b), (c, d) = _as_pair(x), _as_pair(y)
    if x.tag == "dom" and y.tag != "dom":
        return ODouble.dom(a, b + d)
    if y.tag == "dom" and x.tag != "dom":
        return ODouble.dom(c, b + d)
    if x.tag == "dom":  # both dominator: componentwise semiring rule
        return ODouble.dom(max(a, c), b + d)
    if "plain" in (x.tag, y.tag):
        return ODouble.plain(max(a, c), b + d)
    return ODouble.shared(b + d)


def odouble_mul(x: ODouble, y: ODouble) -> ODouble:
    if x == ODouble.shared(0) or y == ODouble.shared(0):
        return ODouble.shared(0)  # the empty class absorbs
    (a, b), (c, d) = _as_pair(x), _as_pair(y)
    if x.tag == "dom" and y.tag != "dom":
        return ODouble.dom(a, b * d)
    if y.tag == "dom" and x.tag != "dom":
        return ODouble.dom(c, b * d)
    if x.tag == "dom":
        return ODouble.dom(a + c, b * d)
    if "plain" in (x.tag, y.tag):
        return ODouble.plain(a + c, b * d)
    return ODouble.shared(b * d)


def integrate(u: LambdaClass) -> int:
    """Groupified invariant: both copies collapse to the integers, leaving the
    alternating Euler characteristic."""
    return chi_alt(u)


# ---------------------------------------------------------------------------
# JSON forms


def step_to_json(s: BlowupStep) -> dict:
    return {"level": s.level, "locus": [s.locus.dim, s.locus.chi],
            "remainder": [s.remainder.dim, s.remainder.chi]}


def plan_to_json(p: BlowupPlan) -> dict:
    return {"steps": [step_to_json(s) for s in p.steps]}


def plan_from_json(obj) -> BlowupPlan:
    if not isinstance(obj, dict) or "steps" not in obj:
        raise ParseError("plan JSON must be an object with a 'steps' field")
    try:
        steps = tuple(
            BlowupStep(int(s["level"]), oclass_from_pair(s["locus"]),
                       oclass_from_pair(s["remainder"]))
            for s in obj["steps"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad plan JSON: {exc}") from None
    return BlowupPlan(steps)
