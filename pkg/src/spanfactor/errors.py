"""Exception hierarchy shared by every module."""


class SpanFactorError(Exception):
    """Base class for all library errors."""


class GraphInputError(SpanFactorError, ValueError):
    """The input graph or an argument is malformed."""


class ParseError(GraphInputError):
    """A graph file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(SpanFactorError, ValueError):
    """A structural precondition of an operation does not hold."""


class ResourceCapError(SpanFactorError, RuntimeError):
    """An exact search would exceed a configured size cap."""

    def __init__(self, cap: str, limit: int, actual: int):
        self.cap = cap
        self.limit = limit
        self.actual = actual
        super().__init__(f"{cap} cap exceeded: {actual} > {limit}")
