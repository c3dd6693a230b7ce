"""Arithmetic in Q[x]/(m(x)) for a monic irreducible m over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..arith.rational import format_rational, parse_rational
from ..errors import DomainError


class NumberField:
    """``Q[x]/(m)`` with ``m`` monic, given by coefficients low to high."""

    _cache: dict[tuple[Fraction, ...], "NumberField"] = {}

    def __new__(cls, minpoly: Sequence):
        coeffs = tuple(Fraction(c) if not isinstance(c, str) else parse_rational(c) for c in minpoly)
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise DomainError("minimal polynomial must be monic of degree >= 1")
        if coeffs in cls._cache:
            return cls._cache[coeffs]
        self = super().__new__(cls)
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.gen_name = "x"
        self._zero = NumberFieldElem(self, (Fraction(0),) * self.degree)
        self._one = NumberFieldElem(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))
        cls._cache[coeffs] = self
        return self

    def __reduce__(self):
        return (NumberField, (self.minpoly,))

    def __repr__(self):
        return f"NumberField({[str(c) for c in self.minpoly]})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1 and self.minpoly[0] == 0

    def zero(self) -> "NumberFieldElem":
        return self._zero

    def one(self) -> "NumberFieldElem":
        return self._one

    def gen(self) -> "NumberFieldElem":
        if self.degree == 1:
            return self(-self.minpoly[0])
        return NumberFieldElem(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def __call__(self, value) -> "NumberFieldElem":
        if isinstance(value, NumberFieldElem):
            if value.field is not self:
                if value.field.is_rational:
                    return self(value.coords[0])
                raise DomainError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            coords = [parse_rational(c) if isinstance(c, str) else Fraction(c) for c in value]
            if len(coords) > self.degree:
                return self._reduce(coords)
            coords += [Fraction(0)] * (self.degree - len(coords))
            return NumberFieldElem(self, tuple(coords))
        q = parse_rational(value) if isinstance(value, str) else Fraction(value)
        return NumberFieldElem(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def _reduce(self, coeffs: list[Fraction]) -> "NumberFieldElem":
        c = list(coeffs)
        n = self.degree
        m = self.minpoly
        for k in range(len(c) - 1, n - 1, -1):
            t = c[k]
            if t:
                for i in range(n):
                    c[k - n + i] -= t * m[i]
            c[k] = Fraction(0)
        c = c[:n] + [Fraction(0)] * max(0, n - len(c))
        return NumberFieldElem(self, tuple(c))

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.minpoly]


class NumberFieldElem:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords

    def _other(self, other):
        if isinstance(other, NumberFieldElem):
            if other.field is self.field:
                return other
            return self.field(other)
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NumberFieldElem(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NumberFieldElem(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.field.degree == 1:
            return NumberFieldElem(self.field, (self.coords[0] * o.coords[0],))
        a, b = self.coords, o.coords
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.field._reduce(prod)

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.field.degree
        if n == 1:
            return NumberFieldElem(self.field, (1 / self.coords[0],))
        # solve (self * y) == 1 via the multiplication matrix
        cols = []
        basis = [self.field((Fraction(0),) * i + (Fraction(1),)) for i in range(n)]
        for e in basis:
            cols.append((self * e).coords)
        aug = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        for c in range(n):
            p = next(i for i in range(c, n) if aug[i][c] != 0)
            aug[c], aug[p] = aug[p], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return NumberFieldElem(self.field, tuple(aug[i][n] for i in range(n)))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "NumberFieldElem":
        """Nontrivial Galois conjugate in a quadratic field (identity over Q)."""
        if self.field.degree == 1:
            return self
        if self.field.degree != 2:
            raise DomainError("conjugation only implemented for quadratic fields")
        a, b = self.coords
        # x -> -m1 - x where m = x^2 + m1 x + m0
        m1 = self.field.minpoly[1]
        return NumberFieldElem(self.field, (a - b * m1, -b))

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("element is not rational")
        return self.coords[0]

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coords]

    def __repr__(self):
        if self.field.degree == 1:
            return format_rational(self.coords[0])
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                x = self.field.gen_name
                coef = format_rational(c)
                if i == 0:
                    terms.append(coef)
                else:
                    mono = x if i == 1 else f"{x}^{i}"
                    terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{coef}*{mono}")
        if not terms:
            return "0"
        if len(terms) == 1:
            return terms[0]
        return "(" + (" + ".join(terms) or "0").replace("+ -", "- ") + ")"


QQ = NumberField([0, 1])
#: Q(j) with j a primitive cube root of unity, j^2 + j + 1 = 0.
QQ_J = NumberField([1, 1, 1])
QQ_J.gen_name = "j"
