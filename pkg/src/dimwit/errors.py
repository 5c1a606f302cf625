"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class DimwitError(Exception):
    """Base class for all errors raised by dimwit."""


class ValidationError(DimwitError, ValueError):
    """Input data violates a structural or probabilistic invariant."""


class DomainError(DimwitError, ValueError):
    """A parameter lies outside the range where an operation is defined."""


class SizeError(DimwitError):
    """An enumeration or construction exceeds its size guard."""

    def __init__(self, count: int, cap: int, what: str = "items"):
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} > {cap}")
