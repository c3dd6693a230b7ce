"""Exception hierarchy shared by every module.

The CLI maps :class:`DomainError` to exit code 2 and :class:`PrecisionError`
to exit code 3.
"""


class MahlerError(Exception):
    """Base class for all errors raised by mahlerkit."""


class DomainError(MahlerError, ValueError):
    """An input lies outside the domain of an operation."""


class PrecisionError(MahlerError):
    """Working precision is too low for the requested certification."""


class DivergenceError(MahlerError):
    """A fixed-point iteration failed to stabilise."""


class DimensionError(DomainError):
    """Matrix or series dimensions do not agree."""


class SchemaError(DomainError):
    """A JSON document does not match its schema.

    ``path`` is a JSON-pointer style string naming the offending location.
    """

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"
