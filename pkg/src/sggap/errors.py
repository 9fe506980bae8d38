"""Exception types shared across the package."""


class SGGapError(Exception):
    pass


class DomainError(SGGapError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ToleranceNotReached(SGGapError):
    """The precision cap was hit before the enclosure got narrow enough."""


class MismatchError(SGGapError):
    """Two independent computations of the same quantity disagree."""


class InsufficientValues(SGGapError, ValueError):
    pass


class NoConvergence(SGGapError):
    pass


class CertificationError(SGGapError):
    """Enclosures still overlap at the precision cap."""
