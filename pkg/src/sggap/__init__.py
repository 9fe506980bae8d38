"""Spectral decimation on the Sierpinski gasket with certified ball arithmetic."""

from .errors import (
    CertificationError,
    DomainError,
    InsufficientValues,
    MismatchError,
    NoConvergence,
    SGGapError,
    ToleranceNotReached,
)
from .scalar import Ball, Order, ball, certified_compare, certified_le

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "CertificationError",
    "DomainError",
    "InsufficientValues",
    "MismatchError",
    "NoConvergence",
    "Order",
    "SGGapError",
    "ToleranceNotReached",
    "ball",
    "certified_compare",
    "certified_le",
]
