"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation was called outside its precondition."""


class MorphismSyntaxError(ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ResourceError(RuntimeError):
    """A computation exceeded a configured size limit."""


class MonoidCapExceeded(ResourceError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"transition monoid exceeds cap of {cap} elements")


class InvariantError(AssertionError):
    """Internal consistency check failed; indicates a bug, not bad input."""
