"""Sparse truncated multivariate Puiseux series.

Exponents are stored as integer numerator vectors over a global
ramification ``ram``: the tuple ``(a, b)`` with ``ram == 2`` is
``z0^(a/2) z1^(b/2)``.  ``order`` is the largest total degree (in units of
``1/ram``) up to which the coefficients are known; ``None`` means the series
is exact, i.e. a (Laurent) polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from ..arith.intmatrix import IntMatrix
from ..errors import DimensionError, DomainError, PrecisionError
from .numberfield import QQ, NumberField, NumberFieldElem


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_order(a: int | None, b: int | None) -> int | None:
    if a is None or b is None:
        return None
    return a + b


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def join_fields(a: NumberField, b: NumberField) -> NumberField:
    if a is b:
        return a
    if a.is_rational:
        return b
    if b.is_rational:
        return a
    raise DomainError("series over different number fields")


class PuiseuxSeries:
    __slots__ = ("nvars", "ram", "order", "terms", "field")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[tuple[int, ...], object] | Iterable = (),
        ram: int = 1,
        order: int | None = None,
        field: NumberField = QQ,
    ):
        if nvars < 1:
            raise DimensionError("need at least one variable")
        if ram < 1:
            raise DomainError("ramification must be positive")
        self.nvars = nvars
        self.ram = ram
        self.order = order
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], NumberFieldElem] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} has wrong length for {nvars} variables")
            if order is not None and sum(e) > order:
                continue
            c = field(c)
            if c.is_zero():
                continue
            prev = clean.get(e)
            c = c if prev is None else prev + c
            if c.is_zero():
                clean.pop(e, None)
            else:
                clean[e] = c
        self.terms = clean

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c=1, field: NumberField = QQ, ram: int = 1) -> "PuiseuxSeries":
        return cls(nvars, {(0,) * nvars: c}, ram=ram, field=field)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1, field: NumberField = QQ, ram: int = 1) -> "PuiseuxSeries":
        return cls(len(exps), {tuple(exps): c}, ram=ram, field=field)

    @classmethod
    def variable(cls, nvars: int, i: int, field: NumberField = QQ) -> "PuiseuxSeries":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e, 1, field)

    @classmethod
    def zero(cls, nvars: int, ram: int = 1, order: int | None = None, field: NumberField = QQ):
        return cls(nvars, {}, ram=ram, order=order, field=field)

    @classmethod
    def univariate(cls, coeffs: Sequence, order: int | None = None, field: NumberField = QQ):
        return cls(1, {(k,): c for k, c in enumerate(coeffs)}, order=order, field=field)

    def _new(self, terms, order, ram=None, field=None) -> "PuiseuxSeries":
        out = PuiseuxSeries.__new__(PuiseuxSeries)
        out.nvars = self.nvars
        out.ram = self.ram if ram is None else ram
        out.order = order
        out.field = self.field if field is None else field
        if order is not None:
            terms = {e: c for e, c in terms.items() if sum(e) <= order}
        out.terms = terms
        return out

    # basic queries ------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.order is None

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> int | None:
        """Minimal total degree of a nonzero term, ``None`` for the zero series."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def max_degree(self) -> int | None:
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def coefficient(self, exps: Sequence[int]) -> NumberFieldElem:
        exps = tuple(exps)
        if self.order is not None and sum(exps) > self.order:
            raise PrecisionError(f"coefficient of degree {sum(exps)} beyond order {self.order}")
        return self.terms.get(exps, self.field.zero())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], NumberFieldElem]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def constant_term(self) -> NumberFieldElem:
        return self.terms.get((0,) * self.nvars, self.field.zero())

    def has_nonneg_exponents(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    # ramification / field alignment ------------------------------------
    def with_ram(self, ram: int) -> "PuiseuxSeries":
        if ram == self.ram:
            return self
        if ram % self.ram:
            raise DomainError("new ramification must be a multiple of the old one")
        k = ram // self.ram
        terms = {tuple(x * k for x in e): c for e, c in self.terms.items()}
        order = None if self.order is None else self.order * k + (k - 1)
        return self._new(terms, order, ram=ram)

    def with_field(self, field: NumberField) -> "PuiseuxSeries":
        if field is self.field:
            return self
        return self._new({e: field(c) for e, c in self.terms.items()}, self.order, field=field)

    def _align(self, other: "PuiseuxSeries") -> tuple["PuiseuxSeries", "PuiseuxSeries"]:
        if self.nvars != other.nvars:
            raise DimensionError(f"{self.nvars} vs {other.nvars} variables")
        field = join_fields(self.field, other.field)
        ram = _lcm(self.ram, other.ram)
        return self.with_ram(ram).with_field(field), other.with_ram(ram).with_field(field)

    def _coerce(self, other) -> "PuiseuxSeries":
        if isinstance(other, PuiseuxSeries):
            return other
        if isinstance(other, (int, Fraction, NumberFieldElem)):
            return PuiseuxSeries(self.nvars, {(0,) * self.nvars: other}, ram=self.ram,
                                 field=other.field if isinstance(other, NumberFieldElem) else self.field)
        return NotImplemented

    # ring operations ----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        order = _min_order(a.order, b.order)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return a._new(terms, order)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PuiseuxSeries":
        if isinstance(c, NumberFieldElem) and c.field is not self.field:
            field = join_fields(self.field, c.field)
            return self.with_field(field).scale(field(c))
        c = self.field(c)
        if c.is_zero():
            return self._new({}, self.order)
        return self._new({e: c * v for e, v in self.terms.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElem)):
            return self.scale(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = self._align(other)
        va, vb = a.valuation(), b.valuation()
        if va is None and a.order is None or vb is None and b.order is None:
            return a._new({}, None)
        # a term of degree > N_a in a contributes at degree > N_a + v_b
        if va is None:
            order = _add_order(a.order, vb if vb is not None else 0)
        elif vb is None:
            order = _add_order(b.order, va)
        else:
            order = _min_order(_add_order(a.order, vb), _add_order(b.order, va))
        bt = sorted(b.terms.items(), key=lambda t: sum(t[0]))
        terms: dict[tuple[int, ...], NumberFieldElem] = {}
        for ea, ca in a.terms.items():
            da = sum(ea)
            for eb, cb in bt:
                if order is not None and da + sum(eb) > order:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                p = ca * cb
                s = terms.get(e)
                terms[e] = p if s is None else s + p
        terms = {e: c for e, c in terms.items() if not c.is_zero()}
        return a._new(terms, order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power of a series")
        out = PuiseuxSeries.constant(self.nvars, 1, self.field, self.ram)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def truncate(self, order: int) -> "PuiseuxSeries":
        return self._new(dict(self.terms), _min_order(self.order, order))

    def conj(self) -> "PuiseuxSeries":
        """Apply the nontrivial automorphism of a quadratic coefficient field."""
        return self._new({e: c.conj() for e, c in self.terms.items()}, self.order)

    def inverse(self, order: int) -> "PuiseuxSeries":
        """Multiplicative inverse up to ``order`` for a series with unit constant term."""
        if not self.has_nonneg_exponents():
            raise DomainError("inverse needs non-negative exponents")
        c0 = self.constant_term()
        if c0.is_zero():
            raise DomainError("inverse needs a nonzero constant term")
        order = _min_order(order, self.order)
        inv0 = c0.inverse()
        r = (self - c0).scale(-inv0).truncate(order)  # self = c0 (1 - r)
        out = PuiseuxSeries.constant(self.nvars, 1, self.field, self.ram).truncate(order)
        power = out
        v = r.valuation()
        if v is not None:
            for _ in range(order // max(v, 1) + 1):
                power = (power * r).truncate(order)
                if power.is_zero():
                    break
                out = out + power
        return out.scale(inv0).truncate(order)

    # substitutions ------------------------------------------------------
    def substitute_monomial(self, t: IntMatrix) -> "PuiseuxSeries":
        """``f(Tz)`` with ``(Tz)_i = prod_j z_j^{T_ij}``: exponents map ``v -> T^t v``."""
        if not t.is_square() or t.nrows != self.nvars:
            raise DimensionError(f"matrix {t.shape} does not act on {self.nvars} variables")
        if not t.is_nonnegative():
            raise DomainError("substitution matrix must be non-negative")
        n = self.nvars
        cols = t.rows  # (T^t v)_k = sum_i T_ik v_i
        terms: dict[tuple[int, ...], NumberFieldElem] = {}
        for e, c in self.terms.items():
            ne = tuple(sum(cols[i][k] * e[i] for i in range(n)) for k in range(n))
            s = terms.get(ne)
            terms[ne] = c if s is None else s + c
        terms = {e: c for e, c in terms.items() if not c.is_zero()}
        return self._new(terms, self.order)

    def substitute_monomials(self, monomials: Sequence[Sequence[int]], nvars: int, signs=None) -> "PuiseuxSeries":
        """Substitute ``z_i -> sign_i * prod_j y_j^{M_ij}`` into a series in ``len(monomials)`` variables."""
        if len(monomials) != self.nvars:
            raise DimensionError("one monomial per variable required")
        if signs is not None and self.ram != 1 and any(s != 1 for s in signs):
            raise DomainError("signed substitution needs integral exponents")
        terms: dict[tuple[int, ...], NumberFieldElem] = {}
        for e, c in self.terms.items():
            ne = tuple(sum(monomials[i][k] * e[i] for i in range(self.nvars)) for k in range(nvars))
            if signs is not None:
                sgn = 1
                for s, x in zip(signs, e):
                    if s < 0 and x % 2:
                        sgn = -sgn
                c = c if sgn > 0 else -c
            s = terms.get(ne)
            terms[ne] = c if s is None else s + c
        out = PuiseuxSeries.__new__(PuiseuxSeries)
        out.nvars, out.ram, out.field = nvars, self.ram, self.field
        out.order = None if self.order is None else self.order
        out.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        return out

    def specialize_diagonal(self) -> "PuiseuxSeries":
        """``f(z, ..., z)`` as a univariate series."""
        terms: dict[tuple[int], NumberFieldElem] = {}
        for e, c in self.terms.items():
            k = (sum(e),)
            s = terms.get(k)
            terms[k] = c if s is None else s + c
        out = PuiseuxSeries(1, {}, ram=self.ram, order=self.order, field=self.field)
        out.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        return out

    def derivative(self, var: int = 0) -> "PuiseuxSeries":
        """Partial derivative in ``z_var`` (integral exponents only)."""
        if self.ram != 1:
            raise DomainError("derivative implemented for integral exponents")
        terms = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                continue
            ne = list(e)
            ne[var] -= 1
            terms[tuple(ne)] = c * e[var]
        order = None if self.order is None else self.order - 1
        return self._new(terms, order)

    def evaluate(self, point: Sequence[Fraction]) -> NumberFieldElem:
        """Exact value of a (Laurent) polynomial at a rational point."""
        if self.order is not None:
            raise DomainError("cannot evaluate a truncated series exactly")
        if self.ram != 1:
            raise DomainError("evaluation needs integral exponents")
        point = [Fraction(p) for p in point]
        total = self.field.zero()
        for e, c in self.terms.items():
            m = Fraction(1)
            for x, k in zip(point, e):
                m *= x**k
            total = total + c * m
        return total

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        try:
            a, b = self._align(other)
        except DomainError:
            return False
        return a.order == b.order and a.terms == b.terms

    def __hash__(self):
        return hash((self.nvars, self.ram, self.order, frozenset(self.terms.items())))

    def same_terms(self, other: "PuiseuxSeries") -> bool:
        a, b = self._align(other)
        return a.terms == b.terms

    # rendering ----------------------------------------------------------
    def render(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = ["z"] if self.nvars == 1 else [f"z{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = []
            for name, x in zip(names, e):
                if x == 0:
                    continue
                q = Fraction(x, self.ram)
                if q == 1:
                    mono.append(name)
                else:
                    ex = str(q.numerator) if q.denominator == 1 else f"({q.numerator}/{q.denominator})"
                    mono.append(f"{name}^{ex}")
            cs = repr(c)
            if mono:
                body = "*".join(mono)
                if cs == "1":
                    parts.append(body)
                elif cs == "-1":
                    parts.append("-" + body)
                else:
                    parts.append(f"{cs}*{body}")
            else:
                parts.append(cs)
        text = " + ".join(parts) if parts else "0"
        text = text.replace("+ -", "- ")
        if self.order is not None:
            text += f" + O(deg>{Fraction(self.order, self.ram)})"
        return text

    def __repr__(self):
        return f"PuiseuxSeries({self.render()})"

    # serialisation ------------------------------------------------------
    def to_json(self) -> dict:
        out = {
            "vars": self.nvars,
            "ram": self.ram,
            "order": self.order,
            "terms": [[list(e), c.to_json()] for e, c in self.sorted_terms()],
        }
        if not self.field.is_rational:
            out["field"] = self.field.to_json()
        return out

    @classmethod
    def from_json(cls, data: Mapping, field: NumberField | None = None) -> "PuiseuxSeries":
        from .serialize import series_from_json

        return series_from_json(data, field)
