"""Sparse rational functions and matrices of them.

Numerators and denominators are exact :class:`PuiseuxSeries` with integral,
non-negative exponents.  Reduction is partial by design: monomial factors
are always cancelled, and univariate quotients are reduced by a polynomial
gcd.  Multivariate quotients keep whatever common factors they were built
with, which is harmless because equality is decided by cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from ..arith.ball import Ball
from ..arith.intmatrix import IntMatrix
from ..errors import DimensionError, DomainError
from .numberfield import QQ, NumberField, NumberFieldElem
from .puiseux import PuiseuxSeries, join_fields


def _as_poly(x, nvars: int, field: NumberField) -> PuiseuxSeries:
    if isinstance(x, PuiseuxSeries):
        if x.order is not None:
            raise DomainError("rational functions need exact polynomials")
        if x.ram != 1:
            raise DomainError("rational functions need integral exponents")
        return x
    return PuiseuxSeries.constant(nvars, x, field)


def _shift(p: PuiseuxSeries, e: Sequence[int]) -> PuiseuxSeries:
    terms = {tuple(a + b for a, b in zip(k, e)): c for k, c in p.terms.items()}
    return p._new(terms, None)


def _content_exponent(p: PuiseuxSeries) -> tuple[int, ...]:
    return tuple(min(e[i] for e in p.terms) for i in range(p.nvars))


def _udivmod(a: PuiseuxSeries, b: PuiseuxSeries) -> tuple[PuiseuxSeries, PuiseuxSeries]:
    """Univariate polynomial division with remainder."""
    q_terms: dict[tuple[int], NumberFieldElem] = {}
    r = a
    db = b.max_degree()
    lead = b.terms[(db,)]
    while not r.is_zero() and r.max_degree() >= db:
        dr = r.max_degree()
        c = r.terms[(dr,)] / lead
        q_terms[(dr - db,)] = c
        r = r - _shift(b, (dr - db,)).scale(c)
    return a._new(q_terms, None), r


def _ugcd(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    while not b.is_zero():
        _, r = _udivmod(a, b)
        a, b = b, r
    lead = a.terms[(a.max_degree(),)]
    return a.scale(lead.inverse())


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=1, nvars: int | None = None, field: NumberField | None = None, reduce: bool = True):
        if nvars is None:
            nvars = num.nvars if isinstance(num, PuiseuxSeries) else den.nvars
        if field is None:
            field = QQ
            for x in (num, den):
                if isinstance(x, PuiseuxSeries):
                    field = join_fields(field, x.field)
                elif isinstance(x, NumberFieldElem):
                    field = join_fields(field, x.field)
        num = _as_poly(num, nvars, field).with_field(field)
        den = _as_poly(den, nvars, field).with_field(field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.nvars != den.nvars:
            raise DimensionError("numerator and denominator variable counts differ")
        self.num, self.den = num, den
        if reduce:
            self._reduce()

    def _reduce(self):
        num, den = self.num, self.den
        n = num.nvars
        if num.is_zero():
            self.num = num
            self.den = PuiseuxSeries.constant(n, 1, num.field)
            return
        cn, cd = _content_exponent(num), _content_exponent(den)
        common = [min(a, b) for a, b in zip(cn, cd)]
        num = _shift(num, [-c for c in common])
        den = _shift(den, [-c for c in common])
        if n == 1 and den.max_degree() > 0 and num.max_degree() > 0:
            g = _ugcd(num, den)
            if g.max_degree() > 0:
                num = _udivmod(num, g)[0]
                den = _udivmod(den, g)[0]
        if len(den.terms) == len(num.terms) and len(den.terms) > 1:
            # detect num == c * den
            e0, c0 = den.sorted_terms()[0]
            if e0 in num.terms:
                c = num.terms[e0] / c0
                if (num - den.scale(c)).is_zero():
                    num = PuiseuxSeries.constant(n, c, num.field)
                    den = PuiseuxSeries.constant(n, 1, num.field)
        lead = den.sorted_terms()[0][1]
        if lead != 1:
            inv = lead.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c=1, field: NumberField = QQ) -> "RationalFunction":
        return cls(PuiseuxSeries.constant(nvars, c, field), 1, nvars, field)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1, field: NumberField = QQ) -> "RationalFunction":
        """Monomial with possibly negative exponents."""
        n = len(exps)
        pos = [max(e, 0) for e in exps]
        neg = [max(-e, 0) for e in exps]
        return cls(PuiseuxSeries.monomial(pos, c, field), PuiseuxSeries.monomial(neg, 1, field), n, field)

    @classmethod
    def zero(cls, nvars: int, field: NumberField = QQ) -> "RationalFunction":
        return cls.constant(nvars, 0, field)

    # queries ------------------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def field(self) -> NumberField:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return len(self.den.terms) == 1 and self.den.constant_term() == 1

    def is_constant(self) -> bool:
        return self.is_polynomial() and all(not any(e) for e in self.num.terms)

    def constant_value(self) -> NumberFieldElem:
        if not self.is_constant():
            raise DomainError("not a constant")
        return self.num.constant_term()

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, PuiseuxSeries):
            return RationalFunction(other, 1)
        if isinstance(other, (int, Fraction, NumberFieldElem)):
            return RationalFunction.constant(self.nvars, other, self.field if not isinstance(other, NumberFieldElem) else join_fields(self.field, other.field))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction.constant(self.nvars, 1, self.field) / (self ** (-k))
        return RationalFunction(self.num**k, self.den**k)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if o is NotImplemented or not isinstance(o, RationalFunction):
            return NotImplemented
        if o.nvars != self.nvars:
            return False
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.nvars, len(self.num.terms)))

    # transformations ----------------------------------------------------
    def substitute_monomial(self, t: IntMatrix) -> "RationalFunction":
        return RationalFunction(self.num.substitute_monomial(t), self.den.substitute_monomial(t))

    def derivative(self, var: int = 0) -> "RationalFunction":
        dn = self.num.derivative(var)
        dd = self.den.derivative(var)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def conj(self) -> "RationalFunction":
        return RationalFunction(self.num.conj(), self.den.conj())

    def evaluate(self, point: Sequence[Fraction]) -> NumberFieldElem:
        d = self.den.evaluate(point)
        if d.is_zero():
            raise DomainError("point is a pole of the rational function")
        return self.num.evaluate(point) / d

    def evaluate_ball(self, point: Sequence[Ball]) -> Ball:
        """Value on a box of balls (rational coefficients only)."""
        if not self.field.is_rational:
            raise DomainError("ball evaluation needs rational coefficients")
        d = _poly_ball(self.den, point)
        if d.contains_zero():
            raise DomainError("denominator ball contains zero")
        return _poly_ball(self.num, point) / d

    def to_series(self, order: int) -> PuiseuxSeries:
        """Laurent expansion to total degree ``order``.

        The denominator must be a monomial times a polynomial with nonzero
        constant term.
        """
        ce = _content_exponent(self.den)
        unit = _shift(self.den, [-c for c in ce])
        shift = sum(ce)
        inv = unit.inverse(order + shift)
        out = _shift(self.num * inv, [-c for c in ce])
        # unit^-1 is known to order+shift, so the shifted product is known to order
        return out.truncate(order)

    # rendering / json ---------------------------------------------------
    def render(self, names: Sequence[str] | None = None) -> str:
        n = self.num.render(names)
        if self.is_polynomial():
            return n
        d = self.den.render(names)
        if len(self.num.terms) > 1:
            n = f"({n})"
        if len(self.den.terms) > 1 or any(v != 1 for v in self.den.terms.values()):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFunction({self.render()})"

    def to_json(self) -> dict:
        return {
            "num": [[list(e), c.to_json()] for e, c in self.num.sorted_terms()],
            "den": [[list(e), c.to_json()] for e, c in self.den.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data, nvars: int, field: NumberField = QQ) -> "RationalFunction":
        from ..errors import SchemaError

        if isinstance(data, (int, str)):
            return cls.constant(nvars, field(data) if isinstance(data, str) else data, field)
        if not isinstance(data, dict) or "num" not in data:
            raise SchemaError("rational function must be an object with 'num'")

        def poly(terms, key):
            out = []
            for k, t in enumerate(terms):
                if not isinstance(t, list) or len(t) != 2 or len(t[0]) != nvars:
                    raise SchemaError("bad term", f"/{key}/{k}")
                c = t[1] if isinstance(t[1], list) else [t[1]]
                out.append((tuple(t[0]), field(c)))
            return PuiseuxSeries(nvars, out, field=field)

        den = poly(data["den"], "den") if "den" in data else PuiseuxSeries.constant(nvars, 1, field)
        return cls(poly(data["num"], "num"), den, nvars, field)


def _poly_ball(p: PuiseuxSeries, point: Sequence[Ball]) -> Ball:
    prec = max(b.prec for b in point)
    total = Ball.exact(0, prec)
    for e, c in p.terms.items():
        m = Ball.exact(c.to_rational(), prec)
        for b, k in zip(point, e):
            if k:
                m = m * (b**k)
        total = total + m
    return total


class RationalFunctionMatrix:
    """Square matrix of rational functions in a fixed number of variables."""

    __slots__ = ("entries", "nvars")

    def __init__(self, entries: Sequence[Sequence[RationalFunction]], nvars: int | None = None):
        rows = [list(r) for r in entries]
        if not rows or any(len(r) != len(rows) for r in rows):
            raise DimensionError("coefficient matrix must be square and nonempty")
        if nvars is None:
            nvars = next(x.nvars for r in rows for x in r if isinstance(x, RationalFunction))
        fixed = []
        for r in rows:
            out = []
            for x in r:
                if isinstance(x, RationalFunction):
                    if x.nvars != nvars:
                        raise DimensionError("entries disagree on variable count")
                    out.append(x)
                elif isinstance(x, PuiseuxSeries):
                    out.append(RationalFunction(x))
                else:
                    out.append(RationalFunction.constant(nvars, x, x.field if isinstance(x, NumberFieldElem) else QQ))
            fixed.append(tuple(out))
        self.entries = tuple(fixed)
        self.nvars = nvars

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def field(self) -> NumberField:
        f = QQ
        for r in self.entries:
            for x in r:
                f = join_fields(f, x.field)
        return f

    def __getitem__(self, ij) -> RationalFunction:
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def identity(cls, m: int, nvars: int, field: NumberField = QQ) -> "RationalFunctionMatrix":
        return cls(
            [[RationalFunction.constant(nvars, int(i == j), field) for j in range(m)] for i in range(m)], nvars
        )

    def __matmul__(self, other: "RationalFunctionMatrix") -> "RationalFunctionMatrix":
        if self.size != other.size:
            raise DimensionError("matrix sizes differ")
        m = self.size
        out = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = RationalFunction.zero(self.nvars)
                for k in range(m):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RationalFunctionMatrix(out, self.nvars)

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionMatrix):
            return NotImplemented
        return self.size == other.size and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def map(self, fn) -> "RationalFunctionMatrix":
        return RationalFunctionMatrix([[fn(x) for x in r] for r in self.entries], self.nvars)

    def substitute_monomial(self, t: IntMatrix) -> "RationalFunctionMatrix":
        return self.map(lambda x: x.substitute_monomial(t))

    def det(self) -> RationalFunction:
        m = self.size
        total = RationalFunction.zero(self.nvars)
        for perm in permutations(range(m)):
            term = None
            for i, j in enumerate(perm):
                x = self.entries[i][j]
                if x.is_zero():
                    term = None
                    break
                term = x if term is None else term * x
            else:
                if term is None:
                    continue
                inv = sum(1 for a in range(m) for b in range(a + 1, m) if perm[a] > perm[b])
                total = total + term if inv % 2 == 0 else total - term
        return total

    def denominators_product(self) -> PuiseuxSeries:
        out = PuiseuxSeries.constant(self.nvars, 1, self.field)
        seen: list[PuiseuxSeries] = []
        for r in self.entries:
            for x in r:
                if x.is_polynomial():
                    continue
                if any(x.den == s for s in seen):
                    continue
                seen.append(x.den)
                out = out * x.den
        return out

    def render(self) -> list[list[str]]:
        return [[x.render() for x in r] for r in self.entries]

    def to_json(self) -> list[list[dict]]:
        return [[x.to_json() for x in r] for r in self.entries]

    @classmethod
    def from_json(cls, data, nvars: int, field: NumberField = QQ) -> "RationalFunctionMatrix":
        from ..errors import SchemaError

        if not isinstance(data, list) or not data:
            raise SchemaError("A must be a nonempty list of rows", "/A")
        return cls([[RationalFunction.from_json(x, nvars, field) for x in r] for r in data], nvars)

    def __repr__(self):
        return f"RationalFunctionMatrix({self.render()})"
