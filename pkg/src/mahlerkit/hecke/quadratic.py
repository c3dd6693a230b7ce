"""Exact real quadratic irrationals ``(a + b sqrt(d)) / c``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Mapping

from sympy import factorint

from ..errors import DomainError, SchemaError


def _squarefree_split(d: int) -> tuple[int, int]:
    """``d = s^2 * r`` with ``r`` squarefree; returns ``(s, r)``."""
    s, r = 1, 1
    for p, e in factorint(d).items():
        s *= p ** (e // 2)
        r *= p ** (e % 2)
    return s, r


def _floor_sqrt_mul(t: int, d: int) -> int:
    """``floor(t * sqrt(d))`` for a non-square ``d > 1``."""
    if t >= 0:
        return isqrt(t * t * d)
    return -isqrt(t * t * d) - 1


@dataclass(frozen=True)
class QuadraticIrrational:
    """Canonical ``(a + b sqrt(d)) / c``: ``b != 0``, ``c > 0``, ``d`` squarefree > 1, ``gcd(a, b, c) = 1``."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.b == 0 or self.c <= 0 or self.d <= 1:
            raise DomainError("not a canonical quadratic irrational")

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int) -> "QuadraticIrrational":
        a, b, c, d = int(a), int(b), int(c), int(d)
        if c == 0:
            raise DomainError("zero denominator")
        if d <= 1:
            raise DomainError("d must exceed 1")
        s, r = _squarefree_split(d)
        if r == 1 or b == 0:
            raise DomainError("value is rational")
        b *= s
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        return cls(a // g, b // g, c // g, r)

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticIrrational":
        return cls.make(0, 1, 1, d)

    @classmethod
    def from_json(cls, data: Mapping) -> "QuadraticIrrational":
        if not isinstance(data, Mapping):
            raise SchemaError("omega must be an object {a, b, c, d}")
        for key in ("a", "b", "c", "d"):
            if key not in data:
                raise SchemaError(f"missing key {key!r}", f"/{key}")
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise SchemaError("must be an integer", f"/{key}")
        return cls.make(data["a"], data["b"], data["c"], data["d"])

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    def __str__(self):
        num = f"{self.a} + {self.b}*sqrt({self.d})" if self.a else f"{self.b}*sqrt({self.d})"
        num = num.replace("+ -", "- ").replace(" 1*sqrt", " sqrt")
        if num.startswith("1*sqrt"):
            num = num[2:]
        elif num.startswith("-1*sqrt"):
            num = "-" + num[3:]
        if self.c == 1:
            return num
        return f"({num})/{self.c}"

    # exact structure ---------------------------------------------------------
    def floor_mul(self, n: int) -> int:
        """``floor(n * omega)`` in integer arithmetic."""
        s = _floor_sqrt_mul(n * self.b, self.d)
        return (n * self.a + s) // self.c

    def floor(self) -> int:
        return self.floor_mul(1)

    def sign(self) -> int:
        """Sign of ``a + b sqrt(d)``."""
        if self.a >= 0 and self.b > 0:
            return 1
        if self.a <= 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        return (1 if self.a > 0 else -1) * (1 if self.a * self.a > self.b * self.b * self.d else -1)

    def is_positive(self) -> bool:
        return self.sign() > 0

    def __neg__(self):
        return QuadraticIrrational(-self.a, -self.b, self.c, self.d)

    def __add__(self, k):
        if isinstance(k, QuadraticIrrational):
            if k.d != self.d:
                raise DomainError("sum of irrationals from different fields")
            a = self.a * k.c + k.a * self.c
            b = self.b * k.c + k.b * self.c
            c = self.c * k.c
            if b == 0:
                return Fraction(a, c)
            return QuadraticIrrational.make(a, b, c, self.d)
        k = Fraction(k)
        return QuadraticIrrational.make(
            self.a * k.denominator + k.numerator * self.c, self.b * k.denominator, self.c * k.denominator, self.d
        )

    __radd__ = __add__

    def __sub__(self, k):
        return self + (-k)

    def __rsub__(self, k):
        return (-self) + k

    def __mul__(self, k):
        if isinstance(k, QuadraticIrrational):
            if k.d != self.d:
                raise DomainError("product of irrationals from different fields")
            a = self.a * k.a + self.b * k.b * self.d
            b = self.a * k.b + self.b * k.a
            c = self.c * k.c
            if b == 0:
                return Fraction(a, c)
            return QuadraticIrrational.make(a, b, c, self.d)
        k = Fraction(k)
        if k == 0:
            return Fraction(0)
        return QuadraticIrrational.make(self.a * k.numerator, self.b * k.numerator, self.c * k.denominator, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticIrrational":
        n = self.a * self.a - self.b * self.b * self.d
        return QuadraticIrrational.make(self.c * self.a, -self.c * self.b, n, self.d)

    def __truediv__(self, k):
        if isinstance(k, QuadraticIrrational):
            return self * k.inverse()
        return self * (1 / Fraction(k))

    def __rtruediv__(self, k):
        return self.inverse() * Fraction(k)

    def approx(self, digits: int = 50):
        import mpmath

        with mpmath.workdps(digits + 10):
            return (self.a + self.b * mpmath.sqrt(self.d)) / self.c

    def __lt__(self, other):
        diff = self - other
        if isinstance(diff, Fraction):
            return diff < 0
        return diff.sign() < 0


def same_field(w1: QuadraticIrrational, w2: QuadraticIrrational) -> bool:
    return w1.d == w2.d


def _is_integer(x) -> bool:
    return isinstance(x, Fraction) and x.denominator == 1


def integer_shift(w1: QuadraticIrrational, w2: QuadraticIrrational) -> tuple[int, int] | None:
    """``(s, k)`` with ``w2 = s * w1 + k``, ``s = +-1``, ``k`` integer, if any."""
    if w1.d != w2.d:
        return None
    for s in (1, -1):
        diff = w2 - w1 * s
        if _is_integer(diff):
            return s, int(diff)
    return None


def equiv_pm_mod_z(w1: QuadraticIrrational, w2: QuadraticIrrational) -> bool:
    """True iff ``w1 - w2`` or ``w1 + w2`` is a rational integer."""
    return integer_shift(w1, w2) is not None


# -- continued fractions ------------------------------------------------------


def _pqd(w: QuadraticIrrational) -> tuple[int, int, int]:
    """``w = (P + sqrt(D)) / Q`` with ``Q | D - P^2``."""
    D = w.b * w.b * w.d
    if w.b > 0:
        P, Q = w.a, w.c
    else:
        P, Q = -w.a, -w.c
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    return P, Q, D


def cf_expansion(w: QuadraticIrrational) -> tuple[list[int], list[int]]:
    """Eventually periodic continued fraction ``(preperiod, period)`` of ``w > 0``."""
    if not w.is_positive():
        raise DomainError("continued fraction expansion needs a positive value (shift by an integer first)")
    P, Q, D = _pqd(w)
    r = isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(digits)
        if Q > 0:
            a = (P + r) // Q
        else:
            a = (-P - r - 1) // (-Q)
        digits.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return digits[:start], digits[start:]


def _apply_cf(digits, x):
    for a in reversed(digits):
        x = a + 1 / x
    return x


def from_cf(preperiod: list[int], period: list[int]) -> QuadraticIrrational:
    """Recombine an eventually periodic expansion into the exact surd."""
    if not period:
        raise DomainError("a quadratic irrational needs a nonempty period")
    # x = [period; x]  =>  x = (p x + p') / (q x + q')
    p0, p1, q0, q1 = 1, 0, 0, 1  # matrix [[p0, p1], [q0, q1]]
    for a in period:
        p0, p1, q0, q1 = a * p0 + p1, p0, a * q0 + q1, q0
    # q0 x^2 + (q1 - p0) x - p1 = 0, positive root
    A, B, C = q0, q1 - p0, -p1
    disc = B * B - 4 * A * C
    x = QuadraticIrrational.make(-B, 1, 2 * A, disc)
    out = _apply_cf(preperiod, x) if preperiod else x
    if isinstance(out, Fraction):
        raise DomainError("expansion collapsed to a rational")
    return out


def convergents(digits: list[int]) -> list[Fraction]:
    out = []
    h0, h1, k0, k1 = 1, 0, 0, 1
    for a in digits:
        h0, h1 = a * h0 + h1, h0
        k0, k1 = a * k0 + k1, k0
        out.append(Fraction(h0, k0))
    return out
