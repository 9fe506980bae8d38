from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sggap.dynamics import (
    BranchWord,
    dphi_minus,
    forward_map,
    phi,
    phi_minus,
    phi_minus_iter,
    phi_plus,
    phi_word,
)
from sggap.errors import DomainError
from sggap.scalar import Ball, Order, certified_compare, certified_le, sqrt

SAMPLES = 1000
z06 = st.floats(min_value=0.0, max_value=6.0, allow_nan=False)


def close(b: Ball, x, eps=1e-12):
    return abs(float(b) - x) < eps


def test_forward_map_examples():
    assert forward_map(0).mid == 0
    assert forward_map(2).mid == 6
    assert forward_map(phi_minus(2)).contains(2)


def test_fixed_values_of_branches():
    assert phi_minus(6).contains(2) and phi_minus(6).rad_exact < Fraction(1, 10**30)
    assert phi_plus(6).contains(3)
    assert phi_plus(0).contains(5)
    assert close(phi(b"-".decode(), 3), 0.6972243622680054)


def test_phi_rejects_outside_domain():
    with pytest.raises(DomainError):
        phi_minus(Ball(-0.5))
    with pytest.raises(DomainError):
        phi_plus(Ball(6.5))
    with pytest.raises(ValueError):
        phi("x", 1)


def test_word_application_order():
    # w_1 is applied first
    assert close(phi_word("+-", 2), 1.20060, eps=5e-6)
    assert close(phi_word("--", 6), 0.4384471871911697)
    assert phi_word("", 4).mid == 4
    assert phi_word(BranchWord("+-"), 2).overlaps(phi_minus(phi_plus(2)))


def test_two_lower_steps_from_three():
    # two lower-branch steps from 3 give 0.14357; three steps give 0.02888
    assert close(phi_word("--", 3), 0.1435671794570517)
    assert close(phi_minus_iter(3, 3), 0.028880249655442483)


def test_branch_word_validation():
    with pytest.raises(ValueError):
        BranchWord("+x")
    assert BranchWord("+--").fixed_part() == "+"
    assert BranchWord("-+") + "-" == "-+-"


def test_minus_iterates():
    assert phi_minus_iter(5, 1).overlaps((5 - sqrt(Ball(5))) / 2)
    assert phi_minus_iter(2, 0).mid == 2
    assert close(phi_minus_iter(2, 4), 0.0035867, eps=1e-7)
    vals = [phi_minus_iter(2, n) for n in range(12)]
    assert all(certified_compare(b, a) is Order.LESS for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        phi_minus_iter(2, -1)


def test_derivative_examples():
    assert dphi_minus(0).overlaps(Ball(Fraction(1, 5)))
    assert dphi_minus(6).mid == 1
    assert dphi_minus(4).overlaps(Ball(Fraction(1, 3)))
    with pytest.raises(DomainError):
        dphi_minus(Fraction(25, 4))


@settings(max_examples=SAMPLES)
@given(z06, st.sampled_from("-+"))
def test_inverse_identity(z, b):
    assert forward_map(phi(b, z)).contains(Fraction(z))


@settings(max_examples=SAMPLES)
@given(z06)
def test_branch_separation_and_ranges(z):
    lo, hi = phi_minus(z), phi_plus(z)
    assert certified_compare(lo, hi) is Order.LESS
    # the enclosures never lie outside [0, 2] and [3, 5]
    assert certified_compare(lo, 0) is not Order.LESS
    assert certified_compare(lo, 2) is not Order.GREATER
    assert certified_compare(hi, 3) is not Order.LESS
    assert certified_compare(hi, 5) is not Order.GREATER


@settings(max_examples=SAMPLES)
@given(z06)
def test_gap_identity(z):
    d = phi_plus(z) - phi_minus(z)
    s = sqrt(25 - 4 * Ball(z))
    assert d.overlaps(s)
    assert abs(d.mid - s.mid) <= 2 * (d.rad + s.rad)


@settings(max_examples=SAMPLES)
@given(z06, z06)
def test_equidistance(x, y):
    x, y = min(x, y), max(x, y)
    assert (phi_minus(y) - phi_minus(x)).overlaps(phi_plus(x) - phi_plus(y))


@settings(max_examples=SAMPLES)
@given(st.lists(z06, min_size=4, max_size=4, unique=True))
def test_convexity_surrogate(pts):
    w, x, y, z = sorted(pts)
    if x - w > z - y:
        # shrink the left interval so that it is no longer than the right one
        x = w + (z - y)
    left = phi_minus(x) - phi_minus(w)
    right = phi_minus(z) - phi_minus(y)
    assert certified_le(left, right) or left.overlaps(right)
    # contraction: the lower branch never stretches distances
    assert certified_le(left, Ball(x) - Ball(w)) or left.overlaps(Ball(x) - Ball(w))


@settings(max_examples=SAMPLES)
@given(st.floats(min_value=0.01, max_value=5.99, allow_nan=False))
def test_derivative_matches_finite_difference(z):
    h = Fraction(1, 2**20)
    zq = Fraction(z)
    fd = (phi_minus(zq + h) - phi_minus(zq - h)) / (2 * h)
    d = dphi_minus(zq)
    # the central difference error is bounded by h^2 times the third derivative
    assert abs(float(fd) - float(d)) < 1e-9
    assert certified_le(Ball(Fraction(1, 5)), d) and certified_le(d, 1)
