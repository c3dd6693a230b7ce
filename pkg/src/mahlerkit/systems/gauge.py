"""Gauge certificates ``Phi(z) B = A(z) Phi(Tz)`` for regular singular systems.

Soundness of the truncated check relies on the unknown tails of the
``Phi`` entries having non-negative exponents, so that ``z -> Tz`` cannot
move them below the truncation order.  Laurent parts must be exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Mapping, Sequence

from ..errors import DimensionError, SchemaError
from ..series.mahler import Mismatch, verify_identity
from ..series.numberfield import NumberField, NumberFieldElem
from ..series.puiseux import PuiseuxSeries, join_fields
from ..series.serialize import field_from_json, series_from_json
from .system import MahlerSystem


def _det(mat: Sequence[Sequence[PuiseuxSeries]]) -> PuiseuxSeries:
    m = len(mat)
    total = None
    for perm in permutations(range(m)):
        term = None
        for i, j in enumerate(perm):
            term = mat[i][j] if term is None else term * mat[i][j]
        inv = sum(1 for a in range(m) for b in range(a + 1, m) if perm[a] > perm[b])
        if inv % 2:
            term = -term
        total = term if total is None else total + term
    return total


@dataclass(frozen=True)
class GaugeCertificate:
    phi: tuple[tuple[PuiseuxSeries, ...], ...]
    B: tuple[tuple[NumberFieldElem, ...], ...]
    order: int
    det_exponent: tuple[int, ...] | None
    det_coefficient: NumberFieldElem | None

    @property
    def ram(self) -> int:
        return self.phi[0][0].ram

    def to_json(self) -> dict:
        field = self.phi[0][0].field
        for r in self.B:
            for b in r:
                field = join_fields(field, b.field)
        out = {
            "Phi": [[_strip_field(e.to_json()) for e in r] for r in self.phi],
            "B": [[b.to_json() for b in r] for r in self.B],
            "order": self.order,
            "ram": self.ram,
            "det_exponent": None if self.det_exponent is None else list(self.det_exponent),
        }
        if self.det_coefficient is not None:
            out["det_coefficient"] = self.det_coefficient.to_json()
        if not field.is_rational:
            out["field"] = field.to_json()
        return out


def _strip_field(d: dict) -> dict:
    d = dict(d)
    d.pop("field", None)
    return d


def verify_gauge(
    s: MahlerSystem,
    phi: Sequence[Sequence[PuiseuxSeries]],
    b: Sequence[Sequence],
    order: int,
    det_exponent: Sequence[int] | None = None,
) -> GaugeCertificate | Mismatch:
    """Check ``Phi B = A Phi(Tz)`` entrywise to ``order`` and the declared det coefficient.

    ``order`` and ``det_exponent`` are in units of ``1/ram`` of the ``Phi``
    entries.
    """
    m = s.size
    if len(phi) != m or any(len(r) != m for r in phi) or len(b) != m or any(len(r) != m for r in b):
        raise DimensionError(f"Phi and B must be {m} x {m}")
    ram = phi[0][0].ram
    field = s.field
    for r in phi:
        for e in r:
            field = join_fields(field, e.field)
            if e.ram != ram:
                raise DimensionError("all Phi entries must share one ramification")
    phi = [[e.with_field(field) for e in r] for r in phi]
    bb = [[field(x) for x in r] for r in b]
    lhs = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            acc = PuiseuxSeries.zero(s.nvars, ram, None, field)
            for k in range(m):
                if not bb[k][j].is_zero():
                    acc = acc + phi[i][k].scale(bb[k][j])
            lhs[i][j] = acc
    for j in range(m):
        col = [phi[i][j] for i in range(m)]
        rhs = s.rhs(col, order)
        for i in range(m):
            res = verify_identity(lhs[i][j].truncate(order), rhs[i], order)
            if isinstance(res, Mismatch):
                return Mismatch(res.exponent, res.lhs, res.rhs, where=f"entry ({i}, {j})")
    det_coeff = None
    if det_exponent is not None:
        det = _det(phi)
        det_coeff = det.coefficient(tuple(det_exponent))
        if det_coeff.is_zero():
            return Mismatch(tuple(det_exponent), det_coeff, field.one(), where="det Phi")
    return GaugeCertificate(
        tuple(tuple(r) for r in phi),
        tuple(tuple(r) for r in bb),
        order,
        None if det_exponent is None else tuple(det_exponent),
        det_coeff,
    )


def gauge_from_json(data: Mapping) -> tuple[list[list[PuiseuxSeries]], list[list[NumberFieldElem]], int, list[int] | None, NumberField]:
    for key in ("Phi", "B", "order"):
        if key not in data:
            raise SchemaError(f"missing key {key!r}", f"/{key}")
    field = field_from_json(data.get("field"))
    phi = [[series_from_json(e, field) for e in r] for r in data["Phi"]]
    b = [[field(x if isinstance(x, list) else [x]) for x in r] for r in data["B"]]
    return phi, b, int(data["order"]), data.get("det_exponent"), field


def reverify(s: MahlerSystem, data: Mapping) -> GaugeCertificate | Mismatch:
    phi, b, order, det_exp, _ = gauge_from_json(data)
    return verify_gauge(s, phi, b, order, det_exp)
