"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RegimeError(RuntimeError):
    """A small-power regime condition is violated while strict mode is on."""


class ConsistencyError(RuntimeError):
    """An internal probability identity failed beyond numerical tolerance."""


class OracleMismatchError(RuntimeError):
    """An independent verification oracle disagrees beyond tolerance."""
