"""Computer algebra for truncated Hahn series over the reals with a tempered
power calculus, plus the class-semiring blowup calculus and a batch CLI.
"""

from .errors import (
    AmbiguousComparison,
    AmbiguousSign,
    DivisionByZero,
    DomainError,
    InsufficientPrecision,
    InvalidStep,
    ModeError,
    NoLeadingTerm,
    NotInO,
    NotPositive,
    NotPositiveUnit,
    ParseError,
    PrecisionGain,
    PreconditionError,
    TemperedHahnError,
)
from .scalar import (
    NumericContext,
    Scalar,
    approx_eq,
    exp_scalar,
    is_exact,
    log_scalar,
    scalar_from_str,
    scalar_to_str,
)
from .hahn import (
    Comparison,
    HahnSeries,
    HS_ZERO,
    from_json,
    hs_add,
    hs_approx_eq,
    hs_compare,
    hs_const,
    hs_div,
    hs_invert,
    hs_monomial,
    hs_mul,
    hs_neg,
    hs_one,
    hs_pow_int,
    hs_scalar_mul,
    hs_sub,
    hs_t,
    hs_truncate,
    make,
    to_json,
)
from .valuation import (
    GAMMA_ONE,
    GAMMA_ZERO,
    GammaCoord,
    Membership,
    RV_ZERO,
    RvElement,
    ac,
    av,
    classify,
    embed_gamma,
    gamma,
    gamma_inv,
    gamma_mul,
    gamma_pow,
    leading,
    lg,
    pi,
    residue,
    rv_mul,
    vv,
)
from .tempered import (
    derivative_check,
    exp_series,
    log_series,
    pow_unit,
    pow_unit_scalar,
    tempered_exp,
    tempered_power,
)
from .euler import (
    LAMBDA_ZERO,
    LambdaClass,
    OClass,
    O_ONE,
    O_ZERO,
    Q_CLASS,
    chi_alt,
    lambda_add,
    lambda_from_json,
    lambda_mul,
    lambda_single,
    lambda_to_json,
    measure,
    oclass_add,
    oclass_mul,
    oclass_pow,
    signature,
)
from .blowup import (
    BlowupPlan,
    BlowupStep,
    ODouble,
    blowup_apply,
    evenup_plan,
    evenup_target_signature,
    integrate,
    isp_related,
    odouble_add,
    odouble_mul,
    plan_apply,
    plan_from_json,
    plan_to_json,
    to_odouble,
)

__version__ = "0.1.0"
