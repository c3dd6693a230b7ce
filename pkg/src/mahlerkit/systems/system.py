"""Mahler systems ``f(z) = A(z) f(Tz)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..arith.intmatrix import IntMatrix
from ..errors import DimensionError, DomainError, SchemaError
from ..series.mahler import Mismatch, Ok, verify_identity
from ..series.numberfield import NumberField
from ..series.puiseux import PuiseuxSeries
from ..series.ratfunc import RationalFunction, RationalFunctionMatrix
from ..series.serialize import field_from_json


@dataclass(frozen=True)
class MahlerSystem:
    """``T`` acts on ``n`` variables; ``A`` is an ``m x m`` rational-function matrix.

    ``inhomogeneous`` marks systems whose last coordinate is the constant 1
    (the companion embedding of an inhomogeneous scalar equation).
    """

    T: IntMatrix
    A: RationalFunctionMatrix
    inhomogeneous: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.T.is_square():
            raise DimensionError("transformation matrix must be square")
        if self.T.nrows != self.A.nvars:
            raise DimensionError(f"T acts on {self.T.nrows} variables, A uses {self.A.nvars}")
        if not self.T.is_nonnegative():
            raise DomainError("transformation matrix must be non-negative")

    @property
    def nvars(self) -> int:
        return self.T.nrows

    @property
    def size(self) -> int:
        return self.A.size

    @property
    def field(self) -> NumberField:
        return self.A.field

    @property
    def q(self) -> int | None:
        """The base ``q`` of a univariate system ``T = (q)``."""
        return self.T[0, 0] if self.nvars == 1 else None

    def rhs(self, components: Sequence[PuiseuxSeries], order: int) -> list[PuiseuxSeries]:
        """``A(z) f(Tz)`` truncated to ``order`` (units of the series ramification)."""
        if len(components) != self.size:
            raise DimensionError("wrong number of components")
        ram = components[0].ram
        subs = [c.substitute_monomial(self.T) for c in components]
        out = []
        for i in range(self.size):
            acc = PuiseuxSeries.zero(self.nvars, ram, order, self.field)
            for j in range(self.size):
                a = self.A[i, j]
                if a.is_zero() or subs[j].is_zero():
                    continue
                if a.is_polynomial():
                    s = a.num.with_ram(ram)
                else:
                    s = a.to_series(order // ram + 1).with_ram(ram)
                acc = acc + (s * subs[j]).truncate(order)
            out.append(acc.truncate(order))
        return out

    def check_solution(self, components: Sequence[PuiseuxSeries], order: int) -> Ok | Mismatch:
        """Coefficientwise check of ``f = A f(Tz)`` up to total degree ``order``."""
        rhs = self.rhs(components, order)
        for i, (lhs, r) in enumerate(zip(components, rhs)):
            res = verify_identity(lhs.truncate(order), r, order)
            if isinstance(res, Mismatch):
                return Mismatch(res.exponent, res.lhs, res.rhs, where=f"component {i}")
        return Ok(order)

    def determinant(self) -> RationalFunction:
        return self.A.det()

    def to_json(self) -> dict:
        out = {"T": self.T.tolist(), "A": self.A.to_json(), "display": self.A.render()}
        if not self.field.is_rational:
            out["field"] = self.field.to_json()
        if self.inhomogeneous:
            out["inhomogeneous"] = True
        return out

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> "MahlerSystem":
        if not isinstance(data, Mapping):
            raise SchemaError("system must be an object")
        for key in ("T", "A"):
            if key not in data:
                raise SchemaError(f"missing key {key!r}", f"/{key}")
        try:
            t = IntMatrix(data["T"])
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad matrix: {exc}", "/T") from exc
        fld = field_from_json(data.get("field"))
        a = RationalFunctionMatrix.from_json(data["A"], t.nrows, fld)
        return cls(t, a, bool(data.get("inhomogeneous", False)), name)


def iterate_system(s: MahlerSystem, l: int) -> MahlerSystem:
    """``T^l`` with coefficient matrix ``A(z) A(Tz) ... A(T^{l-1} z)``."""
    if l < 1:
        raise DomainError("iteration count must be positive")
    a = s.A
    tk = s.T
    for _ in range(1, l):
        a = a @ s.A.substitute_monomial(tk)
        tk = tk @ s.T
    return MahlerSystem(tk, a, s.inhomogeneous, f"{s.name}^{l}" if s.name else "")


def derivative_system(s: MahlerSystem) -> MahlerSystem:
    """Block system ``[[A, 0], [A', q z^{q-1} A]]`` satisfied by ``(f, f')``."""
    if s.nvars != 1:
        raise DomainError("derivative systems are implemented for univariate systems only")
    q = s.T[0, 0]
    m = s.size
    fld = s.field
    zero = RationalFunction.zero(1, fld)
    factor = RationalFunction.monomial([q - 1], q, fld)
    rows = []
    for i in range(m):
        rows.append([s.A[i, j] for j in range(m)] + [zero] * m)
    for i in range(m):
        rows.append([s.A[i, j].derivative(0) for j in range(m)] + [factor * s.A[i, j] for j in range(m)])
    return MahlerSystem(s.T, RationalFunctionMatrix(rows, 1), s.inhomogeneous, f"{s.name}'" if s.name else "")
