"""Scalar Mahler equations and their companion systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..arith.intmatrix import IntMatrix
from ..errors import DomainError
from ..series.ratfunc import RationalFunction, RationalFunctionMatrix
from .system import MahlerSystem


@dataclass(frozen=True)
class ScalarMahlerEq:
    """``p_0(z) f(z) + p_1(z) f(z^q) + ... + p_n(z) f(z^{q^n}) = g(z)``."""

    q: int
    coeffs: tuple[RationalFunction, ...]
    rhs: RationalFunction | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.q < 2:
            raise DomainError("q must be at least 2")
        if len(self.coeffs) < 2:
            raise DomainError("equation order must be at least 1")
        if all(c.is_zero() for c in self.coeffs):
            raise DomainError("all coefficients vanish")
        if any(c.nvars != 1 for c in self.coeffs):
            raise DomainError("scalar equations are univariate")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_inhomogeneous(self) -> bool:
        return self.rhs is not None and not self.rhs.is_zero()


def companion_system(e: ScalarMahlerEq) -> MahlerSystem:
    """Companion system on ``(f(z), f(z^q), ..., f(z^{q^{n-1}})[, 1])``."""
    p0 = e.coeffs[0]
    if p0.is_zero():
        raise DomainError("p_0 vanishes; shift the equation first")
    n = e.order
    inh = e.is_inhomogeneous()
    size = n + 1 if inh else n
    fld = p0.field
    zero = RationalFunction.zero(1, fld)
    one = RationalFunction.constant(1, 1, fld)
    rows = [[zero] * size for _ in range(size)]
    for k in range(1, n + 1):
        rows[0][k - 1] = -e.coeffs[k] / p0
    for i in range(1, n):
        rows[i][i - 1] = one
    if inh:
        rows[0][n] = e.rhs / p0
        rows[n][n] = one
    return MahlerSystem(IntMatrix([[e.q]]), RationalFunctionMatrix(rows, 1), inh, e.name)


def regular_singular_sufficient(e: ScalarMahlerEq) -> bool:
    """The generic sufficient condition ``p_0(0) p_n(0) != 0``."""
    p0, pn = e.coeffs[0], e.coeffs[-1]
    try:
        return not p0.evaluate([0]).is_zero() and not pn.evaluate([0]).is_zero()
    except DomainError:
        return False


def poly(coeffs: Sequence, field=None) -> RationalFunction:
    """Univariate polynomial from coefficients, low degree first."""
    from ..series.numberfield import QQ
    from ..series.puiseux import PuiseuxSeries

    return RationalFunction(PuiseuxSeries.univariate(coeffs, field=field or QQ))


def _upoly_json(p) -> list[str]:
    from ..arith.rational import format_rational

    if not p.terms:
        return ["0"]
    top = max(e[0] for e in p.terms)
    return [format_rational(p.terms[(k,)].to_rational()) if (k,) in p.terms else "0" for k in range(top + 1)]


def _ratfunc_json(r: RationalFunction) -> dict:
    out = {"num": _upoly_json(r.num)}
    den = _upoly_json(r.den)
    if den != ["1"]:
        out["den"] = den
    return out


def _ratfunc_from_json(data, path: str) -> RationalFunction:
    from ..arith.rational import parse_rational
    from ..errors import SchemaError

    if not isinstance(data, dict) or "num" not in data:
        raise SchemaError("expected {num, den?} with coefficient lists", path)
    try:
        num = poly([parse_rational(c) for c in data["num"]])
        den = poly([parse_rational(c) for c in data.get("den", ["1"])])
    except DomainError as exc:
        raise SchemaError(str(exc), path) from exc
    return num / den


def equation_to_json(e: ScalarMahlerEq) -> dict:
    """Univariate coefficient lists, lowest degree first, as rational strings."""
    out = {"q": e.q, "coeffs": [_ratfunc_json(c) for c in e.coeffs]}
    if e.is_inhomogeneous():
        out["rhs"] = _ratfunc_json(e.rhs)
    return out


def equation_from_json(data, name: str = "", path: str = "") -> ScalarMahlerEq:
    from ..errors import SchemaError

    for key in ("q", "coeffs"):
        if key not in data:
            raise SchemaError(f"missing key {key!r}", f"{path}/{key}")
    coeffs = tuple(_ratfunc_from_json(c, f"{path}/coeffs/{i}") for i, c in enumerate(data["coeffs"]))
    rhs = _ratfunc_from_json(data["rhs"], f"{path}/rhs") if "rhs" in data else None
    return ScalarMahlerEq(int(data["q"]), coeffs, rhs, name)


def equation_residual(e: ScalarMahlerEq, coeffs: Sequence, order: int):
    """``sum p_k f(z^(q^k)) - g`` for the series with the given coefficients, to ``order``."""
    from ..series.puiseux import PuiseuxSeries

    f = PuiseuxSeries(1, {(n,): c for n, c in enumerate(coeffs[: order + 1]) if c}, order=order)
    total = None
    for k, p in enumerate(e.coeffs):
        term = p.to_series(order) * f.substitute_monomial(IntMatrix([[e.q**k]]))
        total = term if total is None else total + term
    if e.is_inhomogeneous():
        total = total - e.rhs.to_series(order)
    return total.truncate(order)
