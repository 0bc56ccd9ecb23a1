class MonoidVarError(Exception):
    """Base error; `code` is a short machine-readable tag."""

    code = "ERROR"

    def __init__(self, message="", **info):
        super().__init__(message)
        self.info = info


class ParseError(MonoidVarError):
    code = "PARSE_ERROR"

    def __init__(self, message, position=None):
        super().__init__(f"{message} (at {position})" if position is not None else message,
                         position=position)
        self.position = position


class OutOfRange(MonoidVarError):
    code = "OUT_OF_RANGE"


class NoCanonicalizer(MonoidVarError):
    code = "NO_CANONICALIZER"


class Nontermination(MonoidVarError):
    code = "NONTERMINATION"


class BudgetExceeded(MonoidVarError):
    code = "BUDGET_EXCEEDED"


class KindMismatch(MonoidVarError):
    code = "KIND_MISMATCH"


class NotOneLetterForm(MonoidVarError):
    code = "NOT_ONE_LETTER_FORM"


class SkeletonMismatch(MonoidVarError):
    code = "SKELETON_MISMATCH"


class RoundTripFailed(MonoidVarError):
    code = "ROUND_TRIP_FAILED"


class StepFailed(MonoidVarError):
    code = "STEP_FAILED"


class InvalidParams(MonoidVarError):
    code = "INVALID_PARAMS"


class UnknownName(MonoidVarError):
    code = "UNKNOWN_NAME"


class UnknownNumber(MonoidVarError):
    code = "UNKNOWN_NUMBER"


class NotALattice(MonoidVarError):
    code = "NOT_A_LATTICE"


class OrderViolation(MonoidVarError):
    code = "ORDER_VIOLATION"
