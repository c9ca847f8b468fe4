"""Exception types shared across the toolkit."""


class ValidationError(ValueError):
    """Input data or configuration violates a domain invariant."""


class DegenerateError(ValueError):
    """A computation has no well-defined answer for the given input."""
