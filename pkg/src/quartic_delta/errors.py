"""Exception types shared across modules."""


class GuardError(RuntimeError):
    """An enumeration or size guard was exceeded."""


class QuadratureError(RuntimeError):
    """A refinement loop did not stabilise."""
