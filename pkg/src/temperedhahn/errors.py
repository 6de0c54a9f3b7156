"""Exception hierarchy shared by all modules.

Every error raised on bad *mathematical* input derives from TemperedHahnError,
so callers (and the CLI) can distinguish domain failures from bugs.
"""


class TemperedHahnError(Exception):
    """Base class for all library errors."""

    kind = "error"


class DivisionByZero(TemperedHahnError):
    kind = "DivisionByZero"


class AmbiguousSign(TemperedHahnError):
    """A float value is within tolerance of zero but a sign is demanded."""

    kind = "AmbiguousSign"


class ModeError(TemperedHahnError):
    """An operation needs the float backend but got an exact value (or vice versa)."""

    kind = "ModeError"


class DomainError(TemperedHahnError):
    kind = "DomainError"


class NoLeadingTerm(TemperedHahnError):
    """Empty term list with a finite truncation order: the value is
    indistinguishable from zero, so no leading term can be produced."""

    kind = "NoLeadingTerm"


class PrecisionGain(TemperedHahnError):
    """Attempt to raise a truncation order, i.e. to invent an unknown tail."""

    kind = "PrecisionGain"


class AmbiguousComparison(TemperedHahnError):
    """The difference of two series is zero on all known terms but truncated."""

    kind = "AmbiguousComparison"


class NotInO(TemperedHahnError):
    """Series is not in the valuation ring (least exponent < 0)."""

    kind = "NotInO"


class InsufficientPrecision(TemperedHahnError):
    """Truncation order too low to read off the requested data."""

    kind = "InsufficientPrecision"


class NotPositiveUnit(TemperedHahnError):
    kind = "NotPositiveUnit"


class NotPositive(TemperedHahnError):
    kind = "NotPositive"


class InvalidStep(TemperedHahnError):
    """Blowup step inconsistent with the class it is applied to."""

    kind = "InvalidStep"


class PreconditionError(TemperedHahnError):
    kind = "PreconditionError"


class ParseError(TemperedHahnError):
    """Expression or literal syntax error; carries a byte offset."""

    kind = "ParseError"

    def __init__(self, message, offset=None):
        super().__init__(message if offset is None else f"{message} (at offset {offset})")
        self.offset = offset
