"""Error types. Each carries a stable string code used by the CLI and in reports."""


class NewtonHodgeError(Exception):
    code = "E_INTERNAL"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"{self.code}: {self.message}" if self.message else self.code


class ParseError(NewtonHodgeError, ValueError):
    code = "E_SYNTAX"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NegativeExponentError(NewtonHodgeError, ValueError):
    code = "E_NEGATIVE_EXPONENT"


class BadVariableError(NewtonHodgeError, ValueError):
    code = "E_BAD_VARIABLE"


class EmptySupportError(NewtonHodgeError, ValueError):
    code = "E_EMPTY"


class UnknownCellError(NewtonHodgeError, KeyError):
    code = "E_UNKNOWN_CELL"


class DegenerateError(NewtonHodgeError, ValueError):
    code = "E_DEGENERATE"


class OutsideError(NewtonHodgeError, ValueError):
    code = "E_OUTSIDE"


class DimensionMismatchError(NewtonHodgeError, ValueError):
    code = "E_DIM_MISMATCH"


class EmptyCellError(NewtonHodgeError, ValueError):
    code = "E_EMPTY_CELL"


class CayleyMismatchError(NewtonHodgeError):
    code = "E_CAYLEY_MISMATCH"


class NotEulerianError(NewtonHodgeError):
    code = "E_NOT_EULERIAN"


class InternalError(NewtonHodgeError):
    code = "E_INTERNAL"


class NotUnimodalError(NewtonHodgeError, ValueError):
    code = "E_NOT_UNIMODAL"


class NonPolynomialError(NewtonHodgeError):
    code = "E_NONPOLYNOMIAL"


class BadLambdaError(NewtonHodgeError, ValueError):
    code = "E_BAD_LAMBDA"


class NotApplicableError(NewtonHodgeError, ValueError):
    code = "E_NOT_APPLICABLE"


class InconsistentError(NewtonHodgeError):
    code = "E_INCONSISTENT"


class TooLargeError(NewtonHodgeError, ValueError):
    code = "E_TOO_LARGE"


class UnsupportedDimensionError(NewtonHodgeError, ValueError):
    code = "E_UNSUPPORTED_DIM"
