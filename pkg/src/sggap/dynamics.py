"""The decimation map R(z) = z(5 - z) and its two inverse branches."""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError
from .scalar import Ball, ball, sqrt

MINUS = "-"
PLUS = "+"

_QUARTER_25 = Fraction(25, 4)


class BranchWord(str):
    """Word over ``{'-', '+'}`` read left to right as w_1 ... w_k.

    ``w_1`` is applied first, so ``BranchWord('+-')`` acting on ``z`` is
    ``phi_minus(phi_plus(z))``.
    """

    def __new__(cls, letters: str = ""):
        letters = str(letters)
        bad = set(letters) - {MINUS, PLUS}
        if bad:
            raise ValueError(f"branch words use only '-' and '+', got {sorted(bad)}")
        return super().__new__(cls, letters)

    def __add__(self, other):
        return BranchWord(str(self) + str(other))

    def fixed_part(self) -> BranchWord:
        """Drop the trailing run of '-' letters."""
        return BranchWord(str(self).rstrip(MINUS))


def forward_map(z) -> Ball:
    z = ball(z)
    return z * (5 - z)


def _check_domain(z: Ball, strict_upper: bool = False) -> None:
    if z.lower_cmp(0) < 0:
        raise DomainError(f"argument {z!r} reaches below 0")
    c = z.upper_cmp(_QUARTER_25)
    if c > 0 or (strict_upper and c >= 0):
        raise DomainError(f"argument {z!r} reaches beyond 25/4")


def _root(z: Ball) -> Ball:
    return sqrt(25 - 4 * z)


def phi_minus(z) -> Ball:
    z = ball(z)
    _check_domain(z)
    # 2z / (5 + sqrt(25 - 4z)) avoids the cancellation in (5 - sqrt(.))/2
    return 2 * z / (5 + _root(z))


def phi_plus(z) -> Ball:
    z = ball(z)
    _check_domain(z)
    return (5 + _root(z)) / 2


def phi(branch: str, z) -> Ball:
    if branch == MINUS:
        return phi_minus(z)
    if branch == PLUS:
        return phi_plus(z)
    raise ValueError(f"branch must be '-' or '+', got {branch!r}")


def phi_word(word, seed) -> Ball:
    """Apply the letters of ``word`` to ``seed``, first letter first."""
    z = ball(seed)
    for letter in BranchWord(word):
        z = phi(letter, z)
    return z


def phi_minus_iter(z, n: int) -> Ball:
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    z = ball(z)
    for _ in range(n):
        z = phi_minus(z)
    return z


def dphi_minus(z) -> Ball:
    """Derivative (25 - 4z)^(-1/2) of the lower branch."""
    z = ball(z)
    _check_domain(z, strict_upper=True)
    return 1 / _root(z)
