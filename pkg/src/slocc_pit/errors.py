"""Exception hierarchy shared by all modules."""


class SloccError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(SloccError, ValueError):
    """Shapes of matrices or vectors do not fit together."""


class InvalidInstanceError(SloccError, ValueError):
    """A state, basis or target rank violates its invariants."""


class InstanceTooLargeError(SloccError):
    """An exact (exponential-cost) procedure refuses an oversized input."""


class FormulaSyntaxError(SloccError, ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ParameterError(SloccError, ValueError):
    """Decision parameters (set size, trials, seed) are unusable."""
