"""Exception hierarchy.

Every precondition failure raises a subclass of :class:`SchurmultError`, so
callers (and the CLI) can map math-level refusals to structured reports.
"""


class SchurmultError(Exception):
    """Base class for all errors raised by this package."""


class NotSquareError(SchurmultError):
    pass


class NotHermitianError(SchurmultError):
    pass


class NotPSDError(SchurmultError):
    pass


class EmptyInputError(SchurmultError):
    pass


class DimensionMismatchError(SchurmultError):
    pass


class ShapeMismatchError(SchurmultError):
    pass


class RowCountMismatchError(SchurmultError):
    pass


class ZeroMatrixError(SchurmultError):
    pass


class PrecisionNotReachedError(SchurmultError):
    pass


class NotInjectiveOnSpanError(SchurmultError):
    pass


class NotInQnError(SchurmultError):
    pass


class ActuallyExtremalError(SchurmultError):
    pass


class WitnessDegenerateError(SchurmultError):
    pass


class WitnessInvalidError(SchurmultError):
    pass


class NormNotOneError(SchurmultError):
    pass


class PreconditionViolatedError(SchurmultError):
    pass


class NormBracketExcludesOneError(SchurmultError):
    pass


class ColumnsNotUnitError(SchurmultError):
    pass


class BaseNotFullError(SchurmultError):
    pass


class ExtraNotUnitError(SchurmultError):
    pass


class ParseError(SchurmultError):
    """Malformed matrix file.  Carries 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + loc)


class ShapeError(SchurmultError):
    """Entry count does not match the declared matrix shape."""
