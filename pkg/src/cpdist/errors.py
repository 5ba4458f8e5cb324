"""Exception types shared across the package."""


class CpdistError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(CpdistError, ValueError):
    """Inadmissible distribution parameters (wrong domain or type)."""


class ResourceError(CpdistError, RuntimeError):
    """A requested computation exceeds the configured size/memory caps."""


class MomentConditionError(CpdistError, ValueError):
    """Method-of-moments denominators are zero, non-finite, or of the wrong sign."""


class EmptyInputError(CpdistError, ValueError):
    """Input text or counts file yielded no observations."""


class ParseError(CpdistError, ValueError):
    """A counts file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SamplerOverflowError(CpdistError, OverflowError):
    """A sampled chain exceeded the 64-bit accumulator range under the 'error' policy."""


class SamplerStepLimitError(CpdistError, RuntimeError):
    """A sampled chain did not terminate within the configured step budget."""
