"""Eigenvalues of the limit Laplacian as renormalized limits.

An eigenvalue fixed at generation ``l`` with value ``a`` there equals
``F_l(a) = lim_k 5**(l + k) * phi_minus^k(a)``.  The partial products increase
and their increments ``d_k = 5**(l + k) * phi_minus^(k+1)(a)**2`` shrink by a
factor ``20 / (5 + sqrt(25 - 4 x_{k+1}))**2 <= 1/4`` whenever ``a <= 6``, so the
tail after step ``k`` lies in ``[0, 4 d_k / 3]``.  That bound turns each limit
into a certified enclosure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath.libmp import from_rational

from .dynamics import PLUS, BranchWord
from .errors import DomainError, ToleranceNotReached
from .report import GapReport, status_for
from .scalar import DEFAULT_PRECISION, Ball, sqrt
from .spectra import BC, MAX_PRECISION, EigenDescriptor, spectrum

DEFAULT_TOL = Fraction(1, 10**30)
MAX_ITER = 100_000


@dataclass(frozen=True)
class LimitEigenvalue:
    value: Ball
    descriptor: EigenDescriptor
    fixation_level: int


@dataclass(frozen=True)
class DyadicInterval:
    index: int
    lower: Ball
    upper: Ball


def _as_tol(tol) -> Fraction:
    t = Fraction(tol)
    if t <= 0:
        raise ValueError("tolerance must be positive")
    return t


def _limit_once(x: Ball, level: int, tol: Fraction) -> Ball:
    # stop once 4/3 * d_k <= tol / 2
    thr = mpmath.mp.make_mpf(from_rational(3 * tol.numerator, 8 * tol.denominator, 64, "f"))
    for k in range(MAX_ITER):
        nxt = 2 * x / (5 + sqrt(25 - 4 * x))
        d = nxt.square().scale5(level + k)
        if d.upper_cmp(thr) <= 0:
            tail = Ball.hull(0, d * 4 / 3, prec=x.prec)
            return x.scale5(level + k) + tail
        x = nxt
    raise ToleranceNotReached(f"no convergence after {MAX_ITER} steps")


def renormalized_limit(
    a,
    level: int,
    tol=DEFAULT_TOL,
    prec: int | None = None,
    max_prec: int = MAX_PRECISION,
) -> Ball:
    """Enclosure of ``lim_k 5**(level + k) * phi_minus^k(a)`` with radius <= tol.

    ``a`` is a number, a :class:`Ball`, or a callable mapping a precision to a
    ball (so the argument itself can be refined when precision is raised).
    """
    tol = _as_tol(tol)
    if callable(a):
        source: Callable[[int], Ball] = a
    elif isinstance(a, Ball):
        source = a.with_prec
    else:
        source = lambda p: Ball(a, prec=p)  # noqa: E731
    p = DEFAULT_PRECISION if prec is None else prec
    while True:
        x = source(p)
        if x.lower_cmp(0) < 0 or x.upper_cmp(6) >= 0:
            raise DomainError(f"limit argument {x!r} is not inside [0, 6)")
        val = _limit_once(x, level, tol)
        if val.rad_exact <= tol:
            return val
        if p >= max_prec:
            raise ToleranceNotReached(f"radius {val.rad_str()} > {float(tol):g} at {p} bits")
        p = min(2 * p, max_prec)


def increment_ratios(a, level: int, kmax: int, prec: int | None = None) -> list[Ball]:
    """Ratios ``d_{k+1} / d_k`` of consecutive increments for k < kmax."""
    x = Ball(a, prec=prec) if not isinstance(a, Ball) else a
    incs = []
    for k in range(kmax + 1):
        nxt = 2 * x / (5 + sqrt(25 - 4 * x))
        incs.append(nxt.square().scale5(level + k))
        x = nxt
    return [incs[k + 1] / incs[k] for k in range(kmax)]


_cache: dict[tuple, LimitEigenvalue] = {}


def limit_of(
    descriptor: EigenDescriptor, tol=DEFAULT_TOL, prec: int | None = None
) -> LimitEigenvalue:
    """Limit eigenvalue whose lineage is ``descriptor`` continued by '-' forever."""
    fixed = descriptor.fixed()
    level = fixed.fixation
    if level is None:
        raise DomainError("a bare 6 has no limit eigenvalue")
    tol = _as_tol(tol)
    p = DEFAULT_PRECISION if prec is None else prec
    key = (fixed, tol, p)
    hit = _cache.get(key)
    if hit is None:
        value = renormalized_limit(fixed.evaluate, level, tol, p)
        hit = LimitEigenvalue(value, fixed, level)
        _cache[key] = hit
    return hit


NAMED_DESCRIPTORS = {
    "lambda0_2": EigenDescriptor(2, 1),
    "lambda0_5": EigenDescriptor(5, 1),
    "lambda1_5": EigenDescriptor(5, 1, BranchWord(PLUS)),
    "lambda6": EigenDescriptor(6, 2, BranchWord(PLUS)),
}

_ALIASES = {"λ0_2": "lambda0_2", "λ0_5": "lambda0_5", "λ1_5": "lambda1_5", "λ6": "lambda6"}


def named_constant(name: str, tol=DEFAULT_TOL, prec: int | None = None) -> Ball:
    """One of lambda0_2, lambda0_5, lambda1_5, lambda6.

    lambda6 is F_3(3), the lowest 6-series value; lambda1_5 is F_2(phi_plus(5)).
    """
    name = _ALIASES.get(name, name)
    try:
        d = NAMED_DESCRIPTORS[name]
    except KeyError:
        raise ValueError(f"unknown constant {name!r}") from None
    return limit_of(d, tol, prec).value


def gap_ratios(tol=DEFAULT_TOL, prec: int | None = None) -> tuple[Ball, Ball]:
    """``lambda6 / (5 lambda0_5)`` and ``5 lambda1_5 / lambda6``."""
    l05 = named_constant("lambda0_5", tol, prec)
    l15 = named_constant("lambda1_5", tol, prec)
    l6 = named_constant("lambda6", tol, prec)
    return l6 / l05.scale5(1), l15.scale5(1) / l6


def top_of_block(m: int, tol=DEFAULT_TOL, prec: int | None = None) -> Ball:
    """Lowest 6-series eigenvalue of birth ``m``: ``5**(m-2) * lambda6``."""
    return named_constant("lambda6", tol, prec).scale5(m - 2)


def lowest_five_series(m: int, tol=DEFAULT_TOL, prec: int | None = None) -> Ball:
    return named_constant("lambda0_5", tol, prec).scale5(m - 1)


def dyadic_interval(m: int, tol=DEFAULT_TOL, prec: int | None = None) -> DyadicInterval:
    if m < 2:
        raise DomainError("dyadic intervals start at index 2")
    upper = top_of_block(m, tol, prec)
    lower = Ball(0, prec=upper.prec) if m == 2 else top_of_block(m - 1, tol, prec)
    return DyadicInterval(m, lower, upper)


def check_g0(tol=DEFAULT_TOL, prec: int | None = None) -> GapReport:
    """Certify ``2 / g0 < 1`` with ``g0 = lambda6 / (5 lambda0_5)``."""
    g0, _ = gap_ratios(tol, prec)
    margin = 1 - 2 / g0
    return GapReport(
        "dyadic-g0", {}, status_for(margin), margin, margin.prec, details={"g0": g0}
    )


def check_interval_separation(
    m: int, m2: int, tol=DEFAULT_TOL, prec: int | None = None
) -> GapReport:
    if not 2 <= m < m2:
        raise DomainError("need 2 <= m < m2")
    a = top_of_block(m2 - 1, tol, prec)
    margin = a - lowest_five_series(m, tol, prec) - a / 2
    return GapReport(
        "dyadic-separation", {"m": m, "m2": m2}, status_for(margin), margin, margin.prec
    )


def check_sum_closure(m: int, m2: int, tol=DEFAULT_TOL, prec: int | None = None) -> GapReport:
    if not 2 <= m <= m2:
        raise DomainError("need 2 <= m <= m2")
    total = lowest_five_series(m, tol, prec) + lowest_five_series(m2, tol, prec)
    below = total - top_of_block(m2 - 1, tol, prec)
    above = top_of_block(m2, tol, prec) - total
    ok = below.is_positive() and above.is_positive()
    margin = below if below.mid < above.mid else above
    return GapReport(
        "dyadic-sum",
        {"m": m, "m2": m2},
        status_for(margin, ok),
        margin,
        margin.prec,
        details={"lower_slack": below, "upper_slack": above},
    )


def eigenvalues_up_to_fixation(
    L: int, bc: BC | str, tol=DEFAULT_TOL, prec: int | None = None
) -> list[LimitEigenvalue]:
    """Limit eigenvalues fixed by generation ``L``, increasing.

    These are ``F_L(a)`` for ``a`` in the level-``L`` spectrum without 6; the
    order is inherited from the spectrum since ``F_L`` is increasing.
    """
    spec = spectrum(L, BC.parse(bc), prec)
    return [limit_of(e.descriptor, tol, prec) for e in spec.without_six()]
