"""Error hierarchy shared by every hyperdyn package.

Each error carries the process exit code the CLI reports for it.
"""


class HyperdynError(Exception):
    """Base class for all library errors."""
    exit_code = 3

    def __init__(self, message: str, details: dict = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self):
        return {"error": self.message, "kind": type(self).__name__, "details": self.details}


class InvalidConfigError(HyperdynError, ValueError):
    """Experiment configuration or input file failed validation."""
    exit_code = 1


class IncompatibleSpacesError(HyperdynError, ValueError):
    """Sequences from different index bases were combined."""
    exit_code = 1


class PremiseNotMetError(HyperdynError):
    """A theorem's hypothesis does not hold for the supplied data."""
    exit_code = 2


class InvariantViolationError(HyperdynError, AssertionError):
    """A theorem-implied inequality failed; always a bug or a numeric breakdown."""
    exit_code = 3
