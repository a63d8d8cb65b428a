"""Exception hierarchy shared by every subsystem."""


class ArgLearnError(Exception):
    """Base class for all domain errors raised by arglearn."""


class ParseError(ArgLearnError):
    """Malformed input text. Carries 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ValidationError(ArgLearnError):
    """A structure violates one of its invariants."""


class UnsafeRuleError(ValidationError):
    pass


class ArityError(ValidationError):
    pass


class ResourceLimitError(ArgLearnError):
    """A configured size cap (Herbrand base, oracle argument count) was exceeded."""


class DeadlineExceeded(ArgLearnError):
    """A cooperative deadline expired during search."""


class Unsatisfiable(ArgLearnError):
    """The learning task has no solution within the configured bounds."""


class InsufficientExamplesError(ArgLearnError):
    pass
