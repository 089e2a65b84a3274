"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a structural precondition (asymmetry, bad parameter)."""


class NumericError(ArithmeticError):
    """A numeric operation failed (non-convergence, non-finite evaluation)."""


class ConfigError(ValueError):
    """A run configuration failed to parse or validate."""

    def __init__(self, message, line=None, field=None):
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if field is not None:
            loc.append(f"field '{field}'")
        if loc:
            message = f"{', '.join(loc)}: {message}"
        super().__init__(message)
        self.line = line
        self.field = field
