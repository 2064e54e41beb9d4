"""Exception hierarchy shared by the solver modules and the CLI."""


class BvpNewtonError(Exception):
    """Base class for every error raised by this package."""

    #: stable token printed by the CLI on the diagnostic stream
    code = "ERROR"


class SingularMatrix(BvpNewtonError, ArithmeticError):
    """A pivot fell below the breakdown threshold during elimination."""

    code = "SINGULAR_MATRIX"

    def __init__(self, message, pivot_index=None):
        super().__init__(message)
        self.pivot_index = pivot_index


class SingularJacobian(SingularMatrix):
    """The Newton linear system could not be solved at some iteration."""

    code = "SINGULAR_JACOBIAN"

    def __init__(self, message, iteration, pivot_index=None):
        super().__init__(message, pivot_index)
        self.iteration = iteration


class NonFiniteEvaluation(BvpNewtonError, FloatingPointError):
    code = "NON_FINITE"


class InvalidInterval(BvpNewtonError, ValueError):
    code = "INVALID_INTERVAL"


class UnknownProblem(BvpNewtonError, KeyError):
    code = "UNKNOWN_PROBLEM"

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ParseError(BvpNewtonError, ValueError):
    """Malformed expression text; ``position`` is a 0-based character offset."""

    code = "PARSE_ERROR"

    def __init__(self, message, position, source=""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.source = source


class DomainError(BvpNewtonError, ArithmeticError):
    """Expression evaluation left the real domain (log/sqrt of negatives,
    division by zero, non-finite results)."""

    code = "DOMAIN_ERROR"

    def __init__(self, message, subexpression=""):
        super().__init__(message)
        self.subexpression = subexpression
