"""Exception hierarchy shared by the solvers and the command-line front end.

Every error carries a short machine-readable ``code`` so that the CLI can
emit a single ``E_<CODE>: message`` line and pick an exit status.
"""


class SeriesError(Exception):
    code = "ERROR"


class StructureError(SeriesError, ValueError):
    """Operands do not share a variable list."""

    code = "STRUCTURE"


class DomainError(SeriesError, ValueError):
    """An operation was applied outside the set where it is defined exactly."""

    code = "DOMAIN"


class RangeError(SeriesError, IndexError):
    code = "RANGE"


class ConditionError(SeriesError, ValueError):
    """A theorem hypothesis on (dG/dz)(0,0) does not hold for the chosen variant."""

    code = "CONDITION"


class SingularError(SeriesError, ZeroDivisionError):
    code = "SINGULAR"


class ConvergenceError(SeriesError, ArithmeticError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual

    code = "CONVERGENCE"


class ResourceError(SeriesError, RuntimeError):
    code = "RESOURCE"


class ParseError(SeriesError, ValueError):
    code = "PARSE"

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
