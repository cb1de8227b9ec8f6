"""Exception types shared by every module and mapped to CLI exit codes."""


class ParameterError(ValueError):
    """An argument is outside the domain of the operation."""


class ResourceError(RuntimeError):
    """The requested computation exceeds a size guard and was not attempted."""


class DomainError(ValueError):
    """An asymptotic estimate was requested outside its validity window."""
