"""Exception hierarchy. Every error carries a stable ``code`` string."""


class PivotLabError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", **details) -> None:
        super().__init__(message or self.code)
        self.details = details


class DivisionByZero(PivotLabError, ZeroDivisionError):
    code = "DIV_BY_ZERO"


class SingularMatrix(PivotLabError):
    code = "SINGULAR"


class SingularBasis(SingularMatrix):
    code = "SINGULAR_BASIS"


class RankDeficient(PivotLabError):
    code = "RANK_DEFICIENT"


class UnboundedDirection(PivotLabError):
    code = "UNBOUNDED_DIRECTION"


class DegenerateTie(PivotLabError):
    code = "DEGENERATE_TIE"


class NoStartBasis(PivotLabError):
    code = "NO_START_BASIS"


class NeedsBigM(PivotLabError):
    code = "NEEDS_BIGM"


class MonotonicityViolation(PivotLabError):
    code = "MONOTONICITY_VIOLATION"


class RangeError(PivotLabError, ValueError):
    code = "RANGE"


class EndOfCode(PivotLabError):
    code = "END_OF_CODE"


class WidthMismatch(PivotLabError, ValueError):
    code = "WIDTH_MISMATCH"


class PromiseViolation(PivotLabError):
    code = "PROMISE_VIOLATION"


class TrivialQuery(PivotLabError):
    code = "TRIVIAL_QUERY"


class StateExplosion(PivotLabError):
    code = "STATE_EXPLOSION"


class TooLarge(PivotLabError):
    code = "TOO_LARGE"


class PreconditionError(PivotLabError, ValueError):
    code = "PRECONDITION"
