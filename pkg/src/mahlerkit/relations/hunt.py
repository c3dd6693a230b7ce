"""Bounded degree, bounded height polynomial relations among certified values."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from ..arith.ball import Ball
from ..arith.lattice import RelationCertificate, find_integer_relation, required_precision
from ..errors import DomainError, PrecisionError

DEFAULT_DEGREE = 3
DEFAULT_HEIGHT = 10**4


def monomials(n: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``<= degree`` in graded-lex order, ``1`` first."""
    out = []
    for deg in range(degree + 1):
        block = []
        for combo in combinations_with_replacement(range(n), deg):
            e = [0] * n
            for i in combo:
                e[i] += 1
            block.append(tuple(e))
        # graded lex: larger exponent of x1 first, then x2, ...
        block.sort(reverse=True)
        out.extend(block)
    return out


def render_monomial(e: Sequence[int]) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts) or "1"


def render_polynomial(coeffs: Sequence[int], monos: Sequence[Sequence[int]]) -> str:
    s = ""
    for c, e in zip(coeffs, monos):
        if not c:
            continue
        m = render_monomial(e)
        mag = abs(c)
        body = m if mag == 1 and m != "1" else (str(mag) if m == "1" else f"{mag}*{m}")
        if not s:
            s = body if c > 0 else "-" + body
        else:
            s += (" + " if c > 0 else " - ") + body
    return s or "0"


def _ball(v) -> Ball:
    return v if isinstance(v, Ball) else v.value


@dataclass(frozen=True)
class HuntRequest:
    values: tuple
    degree: int = DEFAULT_DEGREE
    height: int = DEFAULT_HEIGHT
    p: int = 0  # 0: take the precision carried by the values
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.values:
            raise DomainError("hunt needs at least one value")
        if self.degree < 1 or self.height < 1:
            raise DomainError("degree and height bounds must be positive")

    @property
    def monomials(self) -> list[tuple[int, ...]]:
        return monomials(len(self.values), self.degree)

    def precision(self) -> int:
        if self.p:
            return self.p
        ps = [getattr(v, "p", None) for v in self.values]
        if all(x is not None for x in ps):
            return min(ps)
        return min(_ball(v).rel_accuracy_bits() for v in self.values)

    def to_json(self) -> dict:
        return {
            "values": [{"mid": _ball(v).mid_decimal(40), "rad": _ball(v).rad_decimal()} for v in self.values],
            "labels": list(self.labels),
            "D": self.degree,
            "H": self.height,
            "p": self.precision(),
        }


@dataclass(frozen=True)
class Found:
    coefficients: tuple[int, ...]
    monomials: tuple[tuple[int, ...], ...]
    certificate: RelationCertificate
    request: HuntRequest

    def polynomial(self) -> str:
        return render_polynomial(self.coefficients, self.monomials)

    def support(self) -> list[tuple[tuple[int, ...], int]]:
        return [(e, c) for e, c in zip(self.monomials, self.coefficients) if c]

    def to_json(self) -> dict:
        return {
            "verdict": "Found",
            "polynomial": self.polynomial(),
            "terms": [{"monomial": list(e), "coefficient": c} for e, c in self.support()],
            "certificate": self.certificate.to_json(),
            "request": self.request.to_json(),
        }


@dataclass(frozen=True)
class NoneUpTo:
    degree: int
    height: int
    p: int
    certificate: RelationCertificate
    request: HuntRequest

    def to_json(self) -> dict:
        return {
            "verdict": "NoneUpTo",
            "D": self.degree,
            "H": self.height,
            "p": self.p,
            "certificate": self.certificate.to_json(),
            "request": self.request.to_json(),
        }


def monomial_balls(values: Sequence[Ball], monos: Sequence[Sequence[int]]) -> list[Ball]:
    prec = max(v.prec for v in values)
    out = []
    for e in monos:
        b = Ball.exact(1, prec)
        for v, k in zip(values, e):
            if k:
                b = b * v**k
        out.append(b)
    return out


def hunt(r: HuntRequest) -> Found | NoneUpTo:
    monos = r.monomials
    p = r.precision()
    need = required_precision(len(monos), r.height)
    if p < need:
        raise PrecisionError(f"hunt needs p >= {need} bits for {len(monos)} monomials at H = {r.height}; have {p}")
    balls = monomial_balls([_ball(v) for v in r.values], monos)
    cert = find_integer_relation(balls, r.height)
    if cert.found:
        # independent re-check of the returned polynomial
        combo = Ball.exact(0, balls[0].prec)
        for c, b in zip(cert.coefficients, balls):
            combo = combo + b * c
        if not combo.contains_zero():
            raise PrecisionError("relation failed its ball re-check")
        return Found(cert.coefficients, tuple(monos), cert, r)
    return NoneUpTo(r.degree, r.height, p, cert, r)
