"""Exception types shared across the engine."""


class ReductionError(RuntimeError):
    """An invariant failed inside window reduction (an implementation bug)."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size cap."""


class InvalidComplexError(ValueError):
    """Input complex fails validation (d^2 != 0, bad degrees or shapes)."""
