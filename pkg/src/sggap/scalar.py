"""Ball arithmetic on mpmath's raw binary floats.

A :class:`Ball` stores a midpoint rounded to nearest at a working precision and
a radius that bounds the distance to every real it stands for.  Rounding errors
of the midpoint are computed exactly (remainders are formed without rounding)
and added to the radius; the radius itself lives at 32 bits and is always
rounded upward.  Every operation is therefore enclosure preserving.
"""

from __future__ import annotations

import enum
import os
from decimal import ROUND_CEILING, ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

import mpmath
from mpmath.libmp import (
    fzero,
    from_float,
    from_int,
    from_rational,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_mul,
    mpf_neg,
    mpf_pos,
    mpf_shift,
    mpf_sqrt,
    mpf_sub,
    to_float,
)

from .errors import DomainError

DEFAULT_PRECISION = int(os.environ.get("SGGAP_PRECISION", "128"))
RAD_PREC = 32

_RNEAR = "n"
_RUP = "u"  # away from zero; radii are non-negative so this is the ceiling
_RDOWN = "d"


class Order(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    OVERLAP = "Overlap"


def _up(x):
    return mpf_pos(x, RAD_PREC, _RUP)


def _sum_up(*terms):
    acc = fzero
    for t in terms:
        if t != fzero:
            acc = mpf_add(acc, t, RAD_PREC, _RUP)
    return acc


def _round_err(exact, rounded):
    if exact == rounded:
        return fzero
    return mpf_abs(mpf_sub(exact, rounded, RAD_PREC, _RUP))


def raw_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x
    if not man:
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def raw_to_decimal(x) -> Decimal:
    """Exact decimal expansion of a raw binary float."""
    sign, man, exp, _ = x
    man = int(man)
    if exp >= 0:
        d = Decimal(man << exp)
    else:
        with localcontext() as ctx:
            ctx.prec = len(str(man)) + 2 * (-exp) + 10
            d = Decimal(man * 5 ** (-exp)).scaleb(exp)
    return -d if sign else d


def _from_fraction(q: Fraction, prec: int):
    p, d = q.numerator, q.denominator
    if d & (d - 1) == 0:
        return mpf_shift(from_int(p), -(d.bit_length() - 1)), fzero
    m = from_rational(p, d, prec, _RNEAR)
    rem = mpf_sub(from_int(p), mpf_mul(m, from_int(d), 0), 0)
    err = mpf_div(mpf_abs(rem), from_int(d), RAD_PREC, _RUP)
    return m, err


def _to_raw(value, prec):
    """Return (midpoint, error) for a plain number."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return from_int(value), fzero
    if isinstance(value, Fraction):
        return _from_fraction(value, prec)
    if isinstance(value, float):
        return from_float(value), fzero
    if isinstance(value, str):
        return _from_fraction(Fraction(value), prec)
    if isinstance(value, mpmath.mpf):
        return value._mpf_, fzero
    if isinstance(value, Decimal):
        return _from_fraction(Fraction(value), prec)
    raise TypeError(f"cannot build a Ball from {type(value).__name__}")


class Ball:
    """Closed interval ``[mid - rad, mid + rad]`` with a working precision.

    >>> Ball(2) + Ball(3)
    Ball('5', rad='0')
    """

    __slots__ = ("_m", "_r", "prec")

    def __init__(self, value=0, radius=0, prec: int | None = None):
        prec = DEFAULT_PRECISION if prec is None else int(prec)
        if prec < 2:
            raise ValueError("precision must be at least 2 bits")
        if isinstance(value, Ball):
            m, r = value._m, value._r
        else:
            m, r = _to_raw(value, prec)
        if radius:
            rm, rr = _to_raw(radius, RAD_PREC)
            if rm[0]:
                raise ValueError("radius must be non-negative")
            r = _sum_up(r, rm, rr)
        self._m = m
        self._r = r
        self.prec = prec

    @classmethod
    def _raw(cls, m, r, prec):
        b = object.__new__(cls)
        b._m = m
        b._r = r
        b.prec = prec
        return b

    @classmethod
    def hull(cls, lo, hi, prec: int | None = None) -> Ball:
        """Smallest ball (up to rounding) containing both arguments."""
        prec = DEFAULT_PRECISION if prec is None else prec
        lo = lo if isinstance(lo, Ball) else Ball(lo, prec=prec)
        hi = hi if isinstance(hi, Ball) else Ball(hi, prec=prec)
        a = mpf_sub(lo._m, lo._r, 0)
        b = mpf_add(hi._m, hi._r, 0)
        if mpf_cmp(a, b) > 0:
            a, b = b, a
        mid_exact = mpf_shift(mpf_add(a, b, 0), -1)
        m = mpf_pos(mid_exact, prec, _RNEAR)
        half = mpf_shift(mpf_sub(b, a, 0), -1)
        return cls._raw(m, _sum_up(half, _round_err(mid_exact, m)), prec)

    # -- accessors ---------------------------------------------------------

    @property
    def mid(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._m)

    @property
    def rad(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._r)

    @property
    def lower(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(mpf_sub(self._m, self._r, self.prec, "f"))

    @property
    def upper(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(mpf_add(self._m, self._r, self.prec, "c"))

    def endpoints(self) -> tuple[Fraction, Fraction]:
        """Exact rational endpoints."""
        m = raw_to_fraction(self._m)
        r = raw_to_fraction(self._r)
        return m - r, m + r

    @property
    def rad_exact(self) -> Fraction:
        return raw_to_fraction(self._r)

    def lower_cmp(self, x) -> int:
        """Sign of ``inf(self) - x`` computed exactly; ``x`` must be dyadic."""
        xm, _ = _to_raw(x, RAD_PREC)
        return mpf_cmp(mpf_sub(self._m, self._r, 0), xm)

    def upper_cmp(self, x) -> int:
        xm, _ = _to_raw(x, RAD_PREC)
        return mpf_cmp(mpf_add(self._m, self._r, 0), xm)

    @property
    def is_exact(self) -> bool:
        return self._r == fzero

    def with_prec(self, prec: int) -> Ball:
        return Ball._raw(self._m, self._r, prec)

    def contains(self, x) -> bool:
        if isinstance(x, Ball):
            lo, hi = self.endpoints()
            xlo, xhi = x.endpoints()
            return lo <= xlo and xhi <= hi
        q = x if isinstance(x, Fraction) else Fraction(x)
        lo, hi = self.endpoints()
        return lo <= q <= hi

    def overlaps(self, other) -> bool:
        return certified_compare(self, other) is Order.OVERLAP

    def is_positive(self) -> bool:
        """True when every point of the ball is > 0."""
        return mpf_cmp(self._m, self._r) > 0 and self._m[0] == 0

    def __float__(self) -> float:
        return to_float(self._m)

    def __repr__(self) -> str:
        return f"Ball({self.mid_str()!r}, rad={self.rad_str()!r})"

    def mid_decimal(self) -> Decimal:
        return raw_to_decimal(self._m)

    def mid_str(self, digits: int | None = None) -> str:
        """Midpoint as a decimal string with ``digits`` significant digits."""
        if digits is None:
            digits = max(4, int(self.prec * 0.30103) + 1)
        if self._m == fzero:
            return "0"
        d = raw_to_decimal(self._m)
        with localcontext() as ctx:
            ctx.prec = digits
            ctx.rounding = ROUND_HALF_EVEN
            d = +d
        return _plain(d)

    def mid_fixed(self, places: int) -> str:
        """Midpoint rounded half-even to ``places`` digits after the point."""
        d = raw_to_decimal(self._m).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)
        return _plain(d) if places > 0 else str(d)

    def rad_str(self, digits: int = 3) -> str:
        """Radius rounded upward to ``digits`` significant digits."""
        if self._r == fzero:
            return "0"
        d = raw_to_decimal(self._r)
        with localcontext() as ctx:
            ctx.prec = digits
            ctx.rounding = ROUND_CEILING
            d = +d
        return str(d).replace("E", "e")

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Ball):
            return other
        try:
            return Ball(other, prec=self.prec)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = max(self.prec, o.prec)
        exact = mpf_add(self._m, o._m, 0)
        m = mpf_pos(exact, prec, _RNEAR)
        return Ball._raw(m, _sum_up(self._r, o._r, _round_err(exact, m)), prec)

    __radd__ = __add__

    def __neg__(self):
        return Ball._raw(mpf_neg(self._m), self._r, self.prec)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = max(self.prec, o.prec)
        exact = mpf_mul(self._m, o._m, 0)
        m = mpf_pos(exact, prec, _RNEAR)
        am, bm = mpf_abs(self._m), mpf_abs(o._m)
        prop = _sum_up(
            mpf_mul(am, o._r, RAD_PREC, _RUP),
            mpf_mul(bm, self._r, RAD_PREC, _RUP),
            mpf_mul(self._r, o._r, RAD_PREC, _RUP),
        )
        return Ball._raw(m, _sum_up(prop, _round_err(exact, m)), prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _div(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _div(o, self)

    def square(self) -> Ball:
        return self * self

    def sqrt(self) -> Ball:
        return sqrt(self)

    def scale5(self, n: int) -> Ball:
        """Multiply by the exact power ``5**n`` (``n`` may be negative)."""
        if n >= 0:
            return self * Ball(5**n, prec=self.prec)
        return self / Ball(5 ** (-n), prec=self.prec)


def _plain(d: Decimal) -> str:
    s = format(d, "f") if -30 < d.adjusted() < 30 else format(d, "e")
    return s


def _div(a: Ball, b: Ball) -> Ball:
    bm = mpf_abs(b._m)
    if mpf_cmp(bm, b._r) <= 0:
        raise DomainError("division by a ball that contains zero")
    prec = max(a.prec, b.prec)
    m = mpf_div(a._m, b._m, prec, _RNEAR)
    rem = mpf_sub(a._m, mpf_mul(m, b._m, 0), 0)
    err = fzero if rem == fzero else mpf_div(mpf_abs(rem), bm, RAD_PREC, _RUP)
    if a._r == fzero and b._r == fzero:
        prop = fzero
    else:
        num = _sum_up(
            mpf_mul(mpf_abs(a._m), b._r, RAD_PREC, _RUP),
            mpf_mul(bm, a._r, RAD_PREC, _RUP),
        )
        den = mpf_mul(bm, mpf_sub(bm, b._r, RAD_PREC, _RDOWN), RAD_PREC, _RDOWN)
        prop = mpf_div(num, den, RAD_PREC, _RUP)
    return Ball._raw(m, _sum_up(prop, err), prec)


def sqrt(x: Ball) -> Ball:
    """Enclosure of the square root; the ball must lie in ``[0, inf)``."""
    if not isinstance(x, Ball):
        x = Ball(x)
    lo = mpf_sub(x._m, x._r, 0)
    if lo[0] and lo != fzero:
        raise DomainError("square root of a ball that meets the negatives")
    if x._m == fzero:
        return Ball._raw(fzero, fzero, x.prec)
    m = mpf_sqrt(x._m, x.prec, _RNEAR)
    rem = mpf_sub(x._m, mpf_mul(m, m, 0), 0)
    err = fzero if rem == fzero else mpf_div(mpf_abs(rem), m, RAD_PREC, _RUP)
    if x._r == fzero:
        prop = fzero
    else:
        den = mpf_add(
            mpf_sqrt(x._m, RAD_PREC, _RDOWN),
            mpf_sqrt(lo, RAD_PREC, _RDOWN),
            RAD_PREC,
            _RDOWN,
        )
        prop = mpf_div(x._r, den, RAD_PREC, _RUP)
    return Ball._raw(m, _sum_up(prop, err), x.prec)


def certified_compare(a, b) -> Order:
    """LESS iff sup(a) < inf(b), GREATER iff inf(a) > sup(b), else OVERLAP."""
    if not isinstance(a, Ball):
        a = Ball(a, prec=b.prec if isinstance(b, Ball) else None)
    if not isinstance(b, Ball):
        b = Ball(b, prec=a.prec)
    d = mpf_sub(b._m, a._m, 0)
    s = mpf_add(a._r, b._r, 0)
    if mpf_cmp(d, s) > 0:
        return Order.LESS
    if mpf_cmp(mpf_neg(d), s) > 0:
        return Order.GREATER
    return Order.OVERLAP


def certified_le(a, b) -> bool:
    """True when sup(a) <= inf(b); holds for equal exact balls."""
    if not isinstance(a, Ball):
        a = Ball(a, prec=b.prec)
    if not isinstance(b, Ball):
        b = Ball(b, prec=a.prec)
    d = mpf_sub(b._m, a._m, 0)
    s = mpf_add(a._r, b._r, 0)
    return mpf_cmp(d, s) >= 0


def ball_arith(op: str, a: Ball, b=None) -> Ball:
    """Dispatch by operation name: add, sub, mul, div, sqrt, scale5."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "sqrt":
        return sqrt(a)
    if op == "scale5":
        return a.scale5(int(b))
    raise ValueError(f"unknown operation {op!r}")


def ball(value, prec: int | None = None) -> Ball:
    return value if isinstance(value, Ball) else Ball(value, prec=prec)
