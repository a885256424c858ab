class DetachkitError(Exception):
    """Base class for errors raised by detachkit."""


class MatroidError(DetachkitError, ValueError):
    """Malformed matroid data (bad basis family, element out of range, ...)."""


class SizeLimitError(DetachkitError):
    """An exhaustive enumeration was requested above the configured element limit."""


class PreconditionError(DetachkitError, ValueError):
    """An operation was called on inputs outside its stated domain."""


class ParseError(DetachkitError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
