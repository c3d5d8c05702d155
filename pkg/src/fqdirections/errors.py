"""Exception types shared across the package."""


class SizeCapError(Exception):
    """A dense grid would exceed the configured table-size cap."""


class NumericalInconsistencyError(ArithmeticError):
    """A floating-point result disagrees with an exact identity beyond its guard band.

    Raised when rounding a spectral count to the nearest integer moves it by more
    than the guard band, or when a Parseval-type identity fails its tolerance.
    Either signals a transform bug, not ordinary numerical noise.
    """


class FsetParseError(ValueError):
    """Malformed .fset input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(ValueError):
    """Invalid campaign configuration."""
