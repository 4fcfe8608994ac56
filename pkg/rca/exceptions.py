"""Errors raised by the rca library.

Each error carries the process exit code the management commands use when
the error escapes a job.
"""


class RcaError(Exception):
    exit_code = 1


class ConfigError(RcaError, ValueError):
    exit_code = 2

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class UnsupportedGroupError(RcaError, ValueError):
    exit_code = 2


class PreconditionError(RcaError, ValueError):
    exit_code = 2


class UncertifiedError(RcaError):
    exit_code = 3


class NumericalError(RcaError):
    exit_code = 4


class IntegrationError(NumericalError):
    def __init__(self, message, segment=None):
        self.segment = segment
        if segment is not None:
            message = f"{message} (path segment {segment})"
        super().__init__(message)


class PathTooCloseError(IntegrationError):
    pass


class DegenerateParameterError(NumericalError):
    pass


class InvariantViolation(RcaError):
    exit_code = 4


class ExactDivisionError(InvariantViolation):
    pass


class DivisionByZeroError(RcaError, ZeroDivisionError):
    exit_code = 4
