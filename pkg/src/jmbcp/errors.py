"""Exception types raised by jmbcp."""


class JMBError(Exception):
    """Base class for all jmbcp errors."""


class InputShapeError(JMBError, ValueError):
    pass


class InsufficientDataError(JMBError, ValueError):
    pass


class InvalidParameterError(JMBError, ValueError):
    pass


class InvalidScenarioError(InvalidParameterError):
    pass


class FactorizationError(JMBError, ValueError):
    """Covariance parameterization is not positive definite."""


class ParseError(JMBError, ValueError):
    """Malformed input file; message carries the offending row/column."""

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column
