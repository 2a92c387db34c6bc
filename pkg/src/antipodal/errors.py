class InputError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class CapabilityError(RuntimeError):
    """The request is well formed but too large for the chosen mode."""


class InvariantBreach(AssertionError):
    """A proved fact failed at runtime, which means the implementation is wrong."""
