class ValidationError(ValueError):
    """Raised when inputs violate a documented precondition or invariant."""
