"""Identity checks and the fixed-point solver for Mahler equations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..arith.intmatrix import IntMatrix
from ..errors import DimensionError, DivergenceError, PrecisionError
from .numberfield import NumberFieldElem
from .puiseux import PuiseuxSeries


@dataclass(frozen=True)
class Ok:
    order: int

    def to_json(self) -> dict:
        return {"verdict": "Ok", "order": self.order}


@dataclass(frozen=True)
class Mismatch:
    exponent: tuple[int, ...]
    lhs: NumberFieldElem
    rhs: NumberFieldElem
    where: str = ""

    def to_json(self) -> dict:
        out = {
            "verdict": "Mismatch",
            "exponent": list(self.exponent),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }
        if self.where:
            out["where"] = self.where
        return out


def verify_identity(lhs: PuiseuxSeries, rhs: PuiseuxSeries, order: int) -> Ok | Mismatch:
    """Compare coefficients of total degree ``<= order`` (units of ``1/ram``).

    Raises :class:`PrecisionError` when either side is not known that far.
    """
    a, b = lhs._align(rhs)
    scale = a.ram // lhs.ram
    order = order * scale
    for side in (a, b):
        if side.order is not None and side.order < order:
            raise PrecisionError(f"series known to order {side.order}, comparison asked for {order}")
    diff = (a.truncate(order) - b.truncate(order))
    if diff.is_zero():
        return Ok(order)
    e, _ = diff.sorted_terms()[0]
    return Mismatch(e, a.terms.get(e, a.field.zero()), b.terms.get(e, b.field.zero()))


def mahler_rhs(coeffs: Sequence[PuiseuxSeries], t: IntMatrix, h: PuiseuxSeries, forcing: PuiseuxSeries, order: int) -> PuiseuxSeries:
    """``sum_k c_k h(T^k z) + forcing`` truncated to ``order``."""
    out = forcing.truncate(order)
    tk = IntMatrix.identity(t.nrows)
    for c in coeffs:
        tk = tk @ t
        if c.is_zero():
            continue
        out = out + (c * h.substitute_monomial(tk)).truncate(order)
    return out.truncate(order)


def solve_mahler_fixed_point(
    coeffs: Sequence[PuiseuxSeries],
    t: IntMatrix,
    forcing: PuiseuxSeries,
    order: int,
    return_iterations: bool = False,
):
    """Solve ``h = sum_{k>=1} c_k h(T^k z) + forcing`` up to total degree ``order``.

    ``order`` is in units of ``1/ram`` of the forcing term.  Iteration starts
    at ``h = forcing`` and stops when an application of the map leaves the
    truncation unchanged; failure to stabilise within ``order + 2`` steps
    raises :class:`DivergenceError`.
    """
    if t.nrows != forcing.nvars:
        raise DimensionError("matrix size differs from the number of variables")
    ram = forcing.ram
    for c in coeffs:
        ram = ram * c.ram // _gcd(ram, c.ram)
    forcing = forcing.with_ram(ram)
    order = order * (ram // forcing.ram) if forcing.ram != ram else order
    coeffs = [c.with_ram(ram) for c in coeffs]
    h = forcing.truncate(order)
    for it in range(1, order + 3):
        nxt = mahler_rhs(coeffs, t, h, forcing, order)
        if nxt.same_terms(h):
            return (nxt, it) if return_iterations else nxt
        h = nxt
    raise DivergenceError(f"fixed-point iteration did not stabilise below order {order}")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
