"""Exception hierarchy shared across the package."""


class RecurlabError(Exception):
    """Base class for all errors raised by recurlab."""


class ValidationError(RecurlabError):
    """Invalid input: malformed spec, bad parameter, broken precondition."""


class ZeroTermError(ValidationError):
    """An operation that needs U_n != 0 was handed a vanishing term."""


class ResourceLimitError(RecurlabError):
    """A configured resource budget (bits, range, search limit) was exceeded."""


class PrecisionExhaustedError(ResourceLimitError):
    """Interval refinement hit its precision cap without separating the candidates."""
