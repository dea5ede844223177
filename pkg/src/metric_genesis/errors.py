class ValidationError(ValueError):
    """Bad user input. ``details`` is a JSON-ready description of the problem."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details if details is not None else {}


class InvariantError(RuntimeError):
    """An internal consistency check failed; this indicates a bug."""
