class ConfigError(ValueError):
    """A config file or input table is malformed or violates an invariant."""

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class NumericalError(ArithmeticError):
    """A computation produced a non-finite result."""
