"""Exception types shared across the package."""


class StarDiscError(Exception):
    """Base class for all package errors."""


class InputError(StarDiscError, ValueError):
    """Invalid arguments: out-of-range values or mismatched dimensions."""


class CapacityError(StarDiscError):
    """A computation would exceed the configured work budget."""

    def __init__(self, message, work=None, budget=None):
        super().__init__(message)
        self.work = work
        self.budget = budget


class TrivialRegimeError(StarDiscError):
    """(q, s, N) lies where the bound holds vacuously and no constants are built."""

    def __init__(self, message, threshold):
        super().__init__(message)
        self.threshold = threshold
