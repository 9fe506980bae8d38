"""Certification of minimal spacings, spectral gaps and the ratio inequalities.

Every verifier returns a :class:`GapReport` whose margin is the slack of the
strict inequality being certified.  Verifiers retry at doubled precision on
overlap and report ``Inconclusive`` only once the precision cap is reached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .dynamics import MINUS, PLUS, phi_minus, phi_minus_iter, phi_plus
from .errors import DomainError, InsufficientValues, MismatchError
from .limits import DEFAULT_TOL, eigenvalues_up_to_fixation, named_constant
from .report import GapReport, escalate, status_for
from .scalar import DEFAULT_PRECISION, Ball, Order, certified_compare, sqrt
from .spectra import BC, MAX_PRECISION, EigenDescriptor, dirichlet_level, spectrum

# four-digit values of the base-case table, in gap order; entry 4 is printed
# as 7.9131 but evaluates to about 7.9e-7 (see table1_rows)
TABLE1_PRINTED = (
    "0", "0.0164", "0.0061", "7.9131", "0.0758", "0.0303",
    "0.0039", "0.0149", "0.0395", "0.0108", "0.0005",
)
TABLE1_FLAGGED = 4


@dataclass
class Spacing:
    """Minimal adjacent difference of a sorted list of enclosures.

    ``ties`` are the other adjacent pairs known to have exactly the same gap
    (by a symbolic identity or because both gaps are exact); they are excluded
    from the comparison.  ``margin`` is the runner-up gap minus the minimum.
    """

    gap: Ball
    witness: tuple[int, int]
    certified: bool
    margin: Ball | None
    runner_up: tuple[int, int] | None
    ties: list[tuple[int, int]] = field(default_factory=list)
    labels: tuple | None = None


def twin_key(a: EigenDescriptor, b: EigenDescriptor) -> tuple[str, str]:
    """Key identifying pairs with provably equal gaps.

    ``phi_plus(u) - phi_plus(v) = phi_minus(v) - phi_minus(u)`` because the two
    branches sum to 5, so a pair whose last steps are both '+' has the same gap
    as the mirrored pair ending in '-'.
    """
    if a.word.endswith(PLUS) and b.word.endswith(PLUS):
        a = EigenDescriptor(a.seed, a.birth, a.word[:-1] + MINUS)
        b = EigenDescriptor(b.seed, b.birth, b.word[:-1] + MINUS)
    sa, sb = str(a), str(b)
    return (sa, sb) if sa <= sb else (sb, sa)


def min_spacing(
    values: Sequence[Ball],
    labels: Sequence | None = None,
    tie_key: Callable[[object, object], Hashable] | None = None,
) -> Spacing:
    """Smallest adjacent difference of ``values`` (sorted increasing).

    With ``labels`` and ``tie_key`` the pairs sharing a key with the minimum are
    treated as exact ties.  ``certified`` means every other gap is certified
    strictly larger than the minimum.
    """
    n = len(values)
    if n < 2:
        raise InsufficientValues("need at least two values")
    gaps = [values[i + 1] - values[i] for i in range(n - 1)]
    best = min(range(n - 1), key=lambda i: gaps[i].mid)

    keys = None
    if labels is not None and tie_key is not None:
        keys = [tie_key(labels[i], labels[i + 1]) for i in range(n - 1)]

    def tied(j: int) -> bool:
        if j == best:
            return True
        if keys is not None and keys[j] == keys[best]:
            return True
        g, h = gaps[j], gaps[best]
        return g.is_exact and h.is_exact and g.mid == h.mid

    cls = [j for j in range(n - 1) if tied(j)]
    if keys is not None:
        # prefer the representative that is its own canonical form
        canon = [j for j in cls if keys[j] == tuple(sorted((str(labels[j]), str(labels[j + 1]))))]
        best = (canon or cls)[0]
    else:
        best = cls[0]
    others = [j for j in range(n - 1) if j not in cls]
    diffs = {j: gaps[j] - gaps[best] for j in others}
    certified = all(d.is_positive() for d in diffs.values())
    runner = min(others, key=lambda j: diffs[j].mid) if others else None
    return Spacing(
        gaps[best],
        (best, best + 1),
        certified,
        diffs[runner] if runner is not None else None,
        (runner, runner + 1) if runner is not None else None,
        [(j, j + 1) for j in cls if j != best],
        (labels[best], labels[best + 1]) if labels is not None else None,
    )


@lru_cache(maxsize=None)
def _orbit(seed, n: int, prec: int) -> tuple[Ball, ...]:
    """``phi_minus^k(seed)`` for k = 0..n."""
    out = [Ball(seed, prec=prec)]
    for _ in range(n):
        out.append(phi_minus(out[-1]))
    return tuple(out)


def _pm(seed, k: int, prec: int) -> Ball:
    return _orbit(seed, k, prec)[k]


def _first_gap(k: int, prec: int) -> Ball:
    """``phi_minus^k(5) - phi_minus^k(2)``."""
    return _pm(5, k, prec) - _pm(2, k, prec)


def _prec(prec):
    return DEFAULT_PRECISION if prec is None else prec


def _desc(seed, birth, word="") -> EigenDescriptor:
    return EigenDescriptor.parse(f"{seed}@{birth}[{word}]")


def _witness(sp: Spacing) -> tuple[str, str] | None:
    return (str(sp.labels[0]), str(sp.labels[1])) if sp.labels else None


def finite_gap_dirichlet(m: int, prec: int | None = None) -> Ball:
    """Closed-form Dirichlet spectral gap, checked against the level-``m`` spectrum."""
    if m < 1:
        raise DomainError("level must be at least 1")
    p = _prec(prec)
    closed = _first_gap(m - 1, p)
    v = dirichlet_level(m, p).values
    built = v[1] - v[0]
    if not closed.overlaps(built):
        raise MismatchError(f"level {m}: closed form {closed!r} vs spectrum {built!r}")
    return closed


def finite_gap_neumann(m: int, prec: int | None = None) -> Ball:
    """``phi_minus^(m-1)(3)``, checked against the lowest nonzero value at level ``m``."""
    if m < 1:
        raise DomainError("level must be at least 1")
    p = _prec(prec)
    closed = _pm(3, m - 1, p)
    v = spectrum(m, BC.NEUMANN, p).values
    built = v[1] - v[0]
    if not closed.overlaps(built):
        raise MismatchError(f"level {m}: closed form {closed!r} vs spectrum {built!r}")
    return closed


def _key2(m: int, p: int) -> GapReport:
    lhs = _pm(5, m - 1, p) / _first_gap(m, p)
    rhs = _pm(5, m, p) / _first_gap(m + 1, p)
    margin = rhs - lhs
    reduction = 6 - _pm(5, m, p)
    return GapReport(
        "key2",
        {"m": m},
        status_for(margin, reduction.is_positive()),
        margin,
        p,
        details={"ratio": lhs, "next_ratio": rhs, "reduction_margin": reduction},
    )


def verify_key2(m: int, prec: int | None = None, max_prec: int = MAX_PRECISION) -> GapReport:
    """Ratio ``phi^(m-1)(5) / gap(m)`` strictly increases from m to m+1.

    Here ``phi`` is the lower branch and ``gap(k) = phi^k(5) - phi^k(2)``.  The
    report also certifies the equivalent reduction ``phi^m(5) < 6``.
    """
    if m < 1:
        raise DomainError("m must be at least 1")
    return escalate(lambda p: _key2(m, p), _prec(prec), max_prec)


def key1_ratio(m: int, prec: int | None = None) -> Ball:
    """``phi^(m-1)(2) / gap(m+1)``, the quantity that grows in two-level steps."""
    p = _prec(prec)
    return _pm(2, m - 1, p) / _first_gap(m + 1, p)


def _key1(m: int, p: int) -> GapReport:
    lhs = key1_ratio(m + 1, p)
    rhs = key1_ratio(m, p)
    margin = lhs - rhs
    return GapReport(
        "key1",
        {"m": m},
        status_for(margin),
        margin,
        p,
        details={"ratio": rhs, "next_ratio": lhs, "increment": margin},
    )


def verify_key1(m: int, prec: int | None = None, max_prec: int = MAX_PRECISION) -> GapReport:
    """``phi^m(2) / gap(m+2) > phi^(m-1)(2) / gap(m+1)``."""
    if m < 1:
        raise DomainError("m must be at least 1")
    return escalate(lambda p: _key1(m, p), _prec(prec), max_prec)


def _lifted(m: int, k: int, p: int):
    """``phi_minus^k`` applied to the level-``m`` Dirichlet values other than 6."""
    entries = dirichlet_level(m, p).without_six()
    vals = [phi_minus_iter(e.value, k) for e in entries]
    labels = [EigenDescriptor(e.descriptor.seed, e.descriptor.birth, e.descriptor.word + MINUS * k)
              for e in entries]
    return vals, labels


def table1(prec: int | None = None) -> list[tuple[int, Ball]]:
    """Adjacent gaps of ``phi_minus^2(A_3 without 6)`` minus the level-5 spectral gap.

    The first gap is the spectral gap itself, so its difference is exactly 0.
    """
    p = _prec(prec)
    vals, labels = _lifted(3, 2, p)
    ref = _first_gap(4, p)
    first = (labels[0], labels[1])
    assert first == (_desc(2, 1, "----"), _desc(5, 1, "----")), first
    out = [(1, Ball(0, prec=p))]
    for i in range(1, len(vals) - 1):
        out.append((i + 1, vals[i + 1] - vals[i] - ref))
    return out


@dataclass(frozen=True)
class Table1Row:
    index: int
    difference: Ball
    printed: str
    rounded: str
    flagged: bool
    matches: bool


def table1_rows(prec: int | None = None) -> list[Table1Row]:
    """:func:`table1` next to the printed four-digit reference values.

    A row matches when it lies within 1e-4 of the printed value (the published
    digits mix truncation and rounding).  The flagged row instead has to be
    positive and below 1e-5.
    """
    rows = []
    for (i, d), printed in zip(table1(prec), TABLE1_PRINTED):
        flagged = i == TABLE1_FLAGGED
        if flagged:
            ok = d.is_positive() and certified_compare(d, Ball("1e-5", prec=d.prec)) is Order.LESS
        else:
            dev = abs_ball(d - Ball(printed, prec=d.prec))
            ok = certified_compare(dev, Ball("1e-4", prec=d.prec)) is Order.LESS
        rows.append(Table1Row(i, d, printed, d.mid_str(4), flagged, ok))
    return rows


def abs_ball(x: Ball) -> Ball:
    return -x if x.mid < 0 else x


def induction_constant(prec: int | None = None) -> Ball:
    """Explicit constant that closes the last case of the induction step.

    ``phi^3(2) / gap(5)`` divided by ``sqrt(25 - 4 u) * sqrt(25 - 4 v)`` with
    ``v = phi_plus(phi^2(2))`` and ``u = phi_minus(v)``; it must exceed 1.
    """
    p = _prec(prec)
    v = phi_plus(_pm(2, 2, p))
    u = phi_minus(v)
    return (_pm(2, 3, p) / _first_gap(5, p)) / (sqrt(25 - 4 * u) * sqrt(25 - 4 * v))


def _lowest_pair(claim_id: str, m: int, k: int, p: int) -> GapReport:
    vals, labels = _lifted(m, k, p)
    sp = min_spacing(vals, labels, twin_key)
    n = m + k - 1
    target = _first_gap(n, p)
    expected = (_desc(2, 1, MINUS * n), _desc(5, 1, MINUS * n))
    conds = [sp.certified, sp.labels == expected, sp.gap.overlaps(target)]
    details = {"gap": sp.gap, "target": target, "runner_up": sp.runner_up}
    if claim_id == "induction":
        aux = induction_constant(p)
        details["constant"] = aux
        conds.append((aux - 1).is_positive())
    params = {"m": m} if claim_id == "induction" else {"m": m, "k": k}
    return GapReport(claim_id, params, status_for(sp.margin, *conds), sp.margin, p,
                     _witness(sp), details)


def verify_induction_step(m: int, prec: int | None = None,
                          max_prec: int = MAX_PRECISION) -> GapReport:
    """Minimal spacing of ``phi_minus^2(A_m without 6)`` is the level-(m+2) spectral gap."""
    if m < 3:
        raise DomainError("m must be at least 3")
    return escalate(lambda p: _lowest_pair("induction", m, 2, p), _prec(prec), max_prec)


def verify_pre_lowest(m: int, k: int, prec: int | None = None,
                      max_prec: int = MAX_PRECISION) -> GapReport:
    """Minimal spacing of ``phi_minus^k(A_m without 6)`` is ``gap(m+k-1)``."""
    if m < 3 or k < 2:
        raise DomainError("need m >= 3 and k >= 2")
    return escalate(lambda p: _lowest_pair("prelowest", m, k, p), _prec(prec), max_prec)


def k1_minimum(m: int, prec: int | None = None) -> Spacing:
    """Minimal spacing of ``phi_minus(A_m without 6)``; reported, not asserted."""
    if m < 1:
        raise DomainError("level must be at least 1")
    vals, labels = _lifted(m, 1, _prec(prec))
    return min_spacing(vals, labels, twin_key)


def _full_dirichlet(m: int, p: int) -> GapReport:
    spec = dirichlet_level(m, p)
    sp = min_spacing(spec.values, spec.descriptors, twin_key)
    gap = _first_gap(m - 1, p)
    details = {"minimum": sp.gap, "spectral_gap": gap}
    if m == 1:
        # A_1 = {2, 5}: the only spacing is the spectral gap itself
        conds = [sp.labels == (_desc(2, 1), _desc(5, 1)), sp.gap.overlaps(gap)]
        return GapReport("fullmin", {"m": m, "bc": "dirichlet"}, status_for(sp.gap, *conds),
                         sp.gap, p, _witness(sp), details)
    closed = _pm(2, m - 1, p)
    upper = phi_plus(_pm(2, m - 2, p))
    identity = 5 - upper
    below_gap = gap - sp.gap
    expected = (_desc(2, 1, MINUS * (m - 2) + PLUS), _desc(5, m))
    conds = [
        sp.certified,
        sp.labels == expected,
        sp.gap.overlaps(closed),
        identity.overlaps(closed),
        below_gap.is_positive(),
    ]
    details.update(closed_form=closed, below_spectral_gap=below_gap)
    margin = sp.margin if sp.margin is not None else sp.gap
    if below_gap.mid < margin.mid:
        margin = below_gap
    return GapReport("fullmin", {"m": m, "bc": "dirichlet"}, status_for(margin, *conds),
                     margin, p, _witness(sp), details)


def _full_neumann(m: int, p: int) -> GapReport:
    spec = spectrum(m, BC.NEUMANN, p)
    sp = min_spacing(spec.values, spec.descriptors, twin_key)
    closed = _pm(3, m - 1, p)
    expected = (_desc(0, 0, MINUS * m), _desc(3, 1, MINUS * (m - 1)))
    conds = [sp.certified, sp.labels == expected, sp.gap.overlaps(closed)]
    details = {"minimum": sp.gap, "closed_form": closed}
    if m == 3:
        # phi_plus(5) - 3 = (sqrt 5 - 1) / 2 separates 3 from its upper neighbour
        aux = phi_plus(Ball(5, prec=p)) - 3
        details["upper_neighbour_of_3"] = aux
        conds.append(aux.overlaps((sqrt(Ball(5, prec=p)) - 1) / 2))
    # with only exact ties (level 1) the minimum itself is the slack
    margin = sp.margin if sp.margin is not None else sp.gap
    return GapReport("fullmin", {"m": m, "bc": "neumann"}, status_for(margin, *conds),
                     margin, p, _witness(sp), details)


def verify_full_level_minimum(m: int, bc, prec: int | None = None,
                              max_prec: int = MAX_PRECISION) -> GapReport:
    """Minimal spacing of the whole level-``m`` spectrum and where it is attained."""
    bc = BC.parse(bc)
    if m < 1:
        raise DomainError("level must be at least 1")
    check = _full_dirichlet if bc is BC.DIRICHLET else _full_neumann
    return escalate(lambda p: check(m, p), _prec(prec), max_prec)


def _theorem(L: int, bc: BC, tol, p: int) -> GapReport:
    ev = eigenvalues_up_to_fixation(L, bc, tol, p)
    sp = min_spacing([e.value for e in ev], [e.descriptor for e in ev])
    if bc is BC.DIRICHLET:
        target = named_constant("lambda0_5", tol, p) - named_constant("lambda0_2", tol, p)
        expected = (_desc(2, 1), _desc(5, 1))
        details = {"gap": sp.gap, "target": target}
    else:
        # the lowest nonzero value is F_1(3) = lambda6 / 25
        target = named_constant("lambda6", tol, p).scale5(-2)
        expected = (_desc(0, 0), _desc(3, 1))
        details = {"gap": sp.gap, "target": target, "normalization": "5**-2 * lambda6"}
    conds = [sp.certified, sp.labels == expected, sp.gap.overlaps(target)]
    details["runner_up"] = sp.runner_up
    # a single spacing has no runner-up; its positivity is the slack
    margin = sp.margin if sp.margin is not None else sp.gap
    return GapReport("theorem", {"L": L, "bc": bc.value}, status_for(margin, *conds),
                     margin, p, _witness(sp), details)


def verify_min_gap_theorem(L: int, bc, tol=DEFAULT_TOL, prec: int | None = None,
                           max_prec: int = MAX_PRECISION) -> GapReport:
    """Minimal spacing of the limit eigenvalues fixed by generation ``L``."""
    bc = BC.parse(bc)
    if (bc is BC.DIRICHLET and L < 3) or L < 1:
        raise DomainError("need L >= 3 (Dirichlet) or L >= 1 (Neumann)")
    return escalate(lambda p: _theorem(L, bc, tol, p), _prec(prec), max_prec)
