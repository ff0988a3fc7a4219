"""Semantic exception hierarchy.

Every domain error carries a stable ``code`` string so CLI output and
structured reports can name failures without parsing messages.
"""


class CredalError(Exception):
    """Base class for all domain errors raised by this library."""

    code = "CREDAL_ERROR"


class NegativeMassError(CredalError):
    code = "NEGATIVE_MASS"


class NotNormalizedError(CredalError):
    code = "NOT_NORMALIZED"


class WeightInvalidError(CredalError):
    code = "WEIGHT_INVALID"


class SpaceMismatchError(CredalError):
    code = "SPACE_MISMATCH"


class NotFactorizedError(CredalError):
    code = "NOT_FACTORIZED"


class UnknownVariableError(CredalError):
    code = "UNKNOWN_VARIABLE"


class ZeroEvidenceError(CredalError):
    code = "ZERO_EVIDENCE"


class ZeroEvidenceEverywhereError(CredalError):
    code = "ZERO_EVIDENCE_EVERYWHERE"


class ParamRangeError(CredalError):
    code = "PARAM_RANGE"


class InfeasibleSystemError(CredalError):
    code = "INFEASIBLE"


class NumericalFailureError(CredalError):
    code = "NUMERICAL_FAILURE"


class DenominatorVanishesError(CredalError):
    code = "DENOMINATOR_VANISHES"


class EmptySetError(CredalError):
    code = "EMPTY_SET"


class SpaceTooLargeError(CredalError):
    code = "SPACE_TOO_LARGE"


class UnknownActionError(CredalError):
    code = "UNKNOWN_ACTION"


class EmptyGroupError(CredalError):
    code = "EMPTY_GROUP"


class PreconditionUnmetError(CredalError):
    code = "PRECONDITION_UNMET"


class UnsupportedFamilyError(CredalError):
    code = "UNSUPPORTED_FAMILY"


class ParseError(CredalError):
    code = "PARSE_ERROR"


class UnknownExampleError(CredalError):
    code = "UNKNOWN_EXAMPLE"
