from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalar import DEFAULT_PRECISION


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION
    limit_tol: Fraction = Fraction(1, 10**30)
    oracle_tol: float = 1e-9
    sweep_max_m: int = 40
    output_format: str = "csv"

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision must be at least 64 bits")
        if self.limit_tol <= 0 or self.oracle_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.sweep_max_m < 1:
            raise ValueError("sweep bound must be at least 1")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
