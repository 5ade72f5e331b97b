"""Exception hierarchy shared by the library and the CLI."""


class TreemaxError(Exception):
    """Base class for all library errors."""


class ParameterError(TreemaxError, ValueError):
    """An argument is outside the documented domain (CLI exit code 2)."""


class DomainError(ParameterError):
    """A numeric operation is undefined for the given operand."""


class ResourceBudgetError(TreemaxError):
    """An enumeration would exceed the configured vertex budget (exit code 3)."""

    def __init__(self, requested, budget):
        self.requested = requested
        self.budget = budget
        super().__init__(
            f"enumeration of {requested} vertices exceeds budget of {budget} vertices"
        )


class DivergenceError(TreemaxError):
    """A quantity is certified to be infinite.

    This is a result, not a numerical failure: the optimality statements
    this library checks are statements about divergence.
    """

    def __init__(self, message, quantity=None):
        self.quantity = quantity
        super().__init__(message)


class UnsupportedTailError(ParameterError):
    """An operation that needs finite support received a function with a tail."""
