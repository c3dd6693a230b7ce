"""Certified real balls with dyadic midpoints.

A :class:`Ball` ``[m +/- r]`` stores an exact dyadic midpoint and a dyadic
upper bound on the radius.  Every operation computes the exact result on
the midpoints, rounds it to ``prec`` significant bits and folds the rounding
error into the radius, so containment never depends on floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log10

from ..errors import DomainError, PrecisionError

DEFAULT_PREC = 256
_RAD_BITS = 30


def _round_nearest(x: Fraction, bits: int) -> Fraction:
    """Round ``x`` to a dyadic with ``bits`` significant bits."""
    if x == 0:
        return x
    num, den = abs(x.numerator), x.denominator
    e = num.bit_length() - den.bit_length()
    shift = bits - e
    if shift >= 0:
        scaled_num, scaled_den = num << shift, den
    else:
        scaled_num, scaled_den = num, den << -shift
    m, rem = divmod(scaled_num, scaled_den)
    if 2 * rem >= scaled_den:
        m += 1
    if x < 0:
        m = -m
    if shift >= 0:
        return Fraction(m, 1 << shift)
    return Fraction(m << -shift)


def _round_up(x: Fraction) -> Fraction:
    """Smallest dyadic with ``_RAD_BITS`` significant bits that is >= x >= 0."""
    if x <= 0:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    e = num.bit_length() - den.bit_length()
    shift = _RAD_BITS - e
    if shift >= 0:
        m = -((-(num << shift)) // den)
        return Fraction(m, 1 << shift)
    m = -((-num) // (den << -shift))
    return Fraction(m << -shift)


@dataclass(frozen=True)
class Ball:
    mid: Fraction
    rad: Fraction = Fraction(0)
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        if self.rad < 0:
            raise DomainError("negative radius")

    # construction -----------------------------------------------------
    @classmethod
    def exact(cls, x, prec: int = DEFAULT_PREC) -> "Ball":
        """Ball around a rational; exact when ``x`` is dyadic within ``prec`` bits."""
        x = Fraction(x)
        m = _round_nearest(x, prec)
        return cls(m, _round_up(abs(x - m)), prec)

    @classmethod
    def from_interval(cls, lo, hi, prec: int = DEFAULT_PREC) -> "Ball":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise DomainError("empty interval")
        return cls._make((lo + hi) / 2, (hi - lo) / 2, prec)

    @classmethod
    def _make(cls, mid: Fraction, rad: Fraction, prec: int) -> "Ball":
        m = _round_nearest(mid, prec)
        return cls(m, _round_up(rad + abs(mid - m)), prec)

    # accessors --------------------------------------------------------
    @property
    def lower(self) -> Fraction:
        return self.mid - self.rad

    @property
    def upper(self) -> Fraction:
        return self.mid + self.rad

    def contains(self, x) -> bool:
        if isinstance(x, Ball):
            return x.lower >= self.lower and x.upper <= self.upper
        return abs(Fraction(x) - self.mid) <= self.rad

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def overlaps(self, other: "Ball") -> bool:
        return abs(self.mid - other.mid) <= self.rad + other.rad

    def mag(self) -> Fraction:
        """Upper bound on ``|x|`` over the ball."""
        return abs(self.mid) + self.rad

    def mig(self) -> Fraction:
        """Lower bound on ``|x|`` over the ball."""
        return max(Fraction(0), abs(self.mid) - self.rad)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Ball":
        if isinstance(other, Ball):
            return other
        if isinstance(other, (int, Fraction)):
            return Ball.exact(other, self.prec)
        return NotImplemented

    def __neg__(self):
        return Ball(-self.mid, self.rad, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Ball._make(self.mid + o.mid, self.rad + o.rad, max(self.prec, o.prec))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Ball._make(self.mid - o.mid, self.rad + o.rad, max(self.prec, o.prec))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        rad = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
        return Ball._make(self.mid * o.mid, rad, max(self.prec, o.prec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.contains_zero():
            raise DomainError("division by a ball containing zero")
        mx, my = self.mid, o.mid
        rad = (abs(my) * self.rad + abs(mx) * o.rad) / (abs(my) * (abs(my) - o.rad))
        return Ball._make(mx / my, rad, max(self.prec, o.prec))

    def __rtruediv__(self, other):
        return Ball.exact(other, self.prec) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("only non-negative integer powers")
        result = Ball.exact(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def with_prec(self, prec: int) -> "Ball":
        return Ball._make(self.mid, self.rad, prec)

    # rendering --------------------------------------------------------
    def rel_accuracy_bits(self) -> int:
        """Number of bits ``b`` with ``rad <= 2**-b * max(1, |mid|)``."""
        if self.rad == 0:
            return 10**9
        scale = max(Fraction(1), abs(self.mid))
        ratio = self.rad / scale
        bits = ratio.denominator.bit_length() - ratio.numerator.bit_length()
        while bits > 0 and Fraction(1, 1 << bits) < ratio:
            bits -= 1
        return bits

    def mid_decimal(self, digits: int | None = None) -> str:
        """Midpoint as a decimal string with ``digits`` fractional digits."""
        if digits is None:
            digits = max(1, ceil(self.prec * log10(2)))
        return decimal_string(self.mid, digits)

    def rad_decimal(self) -> str:
        """Upper bound on the radius, 3 significant digits, rounded up."""
        return upper_sci(self.rad)

    def __repr__(self):
        return f"[{self.mid_decimal(20)} +/- {self.rad_decimal()}]"


def decimal_string(x: Fraction, digits: int) -> str:
    """Round-to-nearest decimal rendering of a rational."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    scaled = abs(x) * 10**digits
    n = scaled.numerator // scaled.denominator
    if 2 * (scaled - n) >= 1:
        n += 1
    s = str(n).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def upper_sci(r: Fraction) -> str:
    r = Fraction(r)
    if r == 0:
        return "0"
    e = len(str(r.numerator // r.denominator)) - 1 if r >= 1 else 0
    if r < 1:
        e = 0
        while r * 10**(-e) < 1:
            e -= 1
    mant = r / Fraction(10) ** e
    m = -((-mant.numerator * 100) // mant.denominator)
    if m >= 1000:
        e += 1
        m = -((-m) // 10)
    return f"{m // 100}.{m % 100:02d}e{e}"


def require_bits(ball: Ball, bits: int) -> None:
    if ball.rel_accuracy_bits() < bits:
        raise PrecisionError(f"ball accurate to {ball.rel_accuracy_bits()} bits, need {bits}")
