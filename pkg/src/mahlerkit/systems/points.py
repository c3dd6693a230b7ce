"""Admissibility and regularity checks at rational points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..arith.ball import Ball
from ..arith.intmatrix import IntMatrix
from ..arith.multiplicative import DependentWitness, mult_indep
from ..errors import DimensionError, DomainError
from ..series.puiseux import PuiseuxSeries
from ..series.ratfunc import RationalFunction
from .spectrum import InM, class_m_check
from .system import MahlerSystem

DEFAULT_K = 32
_EXACT_BITS = 1 << 16


@dataclass(frozen=True)
class Admissible:
    reason: str

    def to_json(self) -> dict:
        return {"verdict": "Admissible", "reason": self.reason}


@dataclass(frozen=True)
class Fails:
    reason: str

    def to_json(self) -> dict:
        return {"verdict": "Fails", "reason": self.reason}


@dataclass(frozen=True)
class Unknown:
    reason: str
    witness: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {"verdict": "Unknown", "reason": self.reason}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass(frozen=True)
class Regular:
    checked_steps: int
    radius: Fraction

    def to_json(self) -> dict:
        return {"verdict": "Regular", "checked_steps": self.checked_steps, "radius": str(self.radius)}


@dataclass(frozen=True)
class Singular:
    k: int

    def to_json(self) -> dict:
        return {"verdict": "Singular", "k": self.k}


def apply_power(t: IntMatrix, alpha: Sequence[Fraction], k: int) -> list[Fraction]:
    """``T^k alpha`` with ``(Tz)_i = prod_j z_j^{T_ij}``."""
    tk = t**k
    out = []
    for row in tk.rows:
        v = Fraction(1)
        for a, e in zip(alpha, row):
            v *= Fraction(a) ** e
        out.append(v)
    return out


def _decay_margin(t: IntMatrix, alpha: Sequence[Fraction], k: int) -> Fraction:
    """Lower bound on ``min_i -log|(T^k alpha)_i|`` using ``-log x >= 1 - x``."""
    c = [1 - abs(Fraction(a)) for a in alpha]
    tk = t**k
    return min(sum(e * cj for e, cj in zip(row, c)) for row in tk.rows)


def _check_point(t: IntMatrix, alpha: Sequence) -> list[Fraction]:
    alpha = [Fraction(a) for a in alpha]
    if len(alpha) != t.nrows:
        raise DimensionError(f"point has {len(alpha)} coordinates, T acts on {t.nrows}")
    if any(a == 0 for a in alpha):
        raise DomainError("point coordinates must be nonzero")
    return alpha


def admissible_check(t: IntMatrix, alpha: Sequence, k: int = DEFAULT_K) -> Admissible | Fails | Unknown:
    alpha = _check_point(t, alpha)
    cm = class_m_check(t)
    if not isinstance(cm, InM):
        return Fails(f"class M: {cm.reason}")
    if any(abs(a) >= 1 for a in alpha):
        return Fails("point outside the open unit polydisk")
    tk = t**k
    if min(sum(r) for r in tk.rows) < k + 1:
        return Unknown(f"decay of T^k alpha not certified within {k} steps")
    verdict = mult_indep(alpha)
    if isinstance(verdict, DependentWitness):
        return Unknown("coordinates multiplicatively dependent", verdict.exponents)
    n = t.nrows
    if t == IntMatrix.scalar(n, t[0, 0]):
        return Admissible("T = qI and coordinates multiplicatively independent")
    return Admissible("coordinates multiplicatively independent")


def singularity_polynomial(s: MahlerSystem) -> PuiseuxSeries:
    """``det A`` numerator times every entry denominator, monomial factors removed."""
    det = s.determinant()
    prod = det.num * s.A.denominators_product()
    if prod.is_zero():
        raise DomainError("coefficient matrix is singular")
    return RationalFunction(prod, PuiseuxSeries.monomial([0] * s.nvars, 1, prod.field)).num


def _strip_monomial(p: PuiseuxSeries) -> PuiseuxSeries:
    ce = [min(e[i] for e in p.terms) for i in range(p.nvars)]
    return p._new({tuple(a - b for a, b in zip(e, ce)): c for e, c in p.terms.items()}, None)


def _eval_exact_or_ball(p: PuiseuxSeries, point: Sequence[Fraction]):
    if all(abs(x.numerator).bit_length() + x.denominator.bit_length() < _EXACT_BITS for x in point):
        return p.evaluate(point)
    balls = [Ball.exact(x, 256) for x in point]
    total = Ball.exact(0, 256)
    for e, c in p.terms.items():
        m = Ball.exact(c.to_rational(), 256)
        for b, k in zip(balls, e):
            m = m * b**k
        total = total + m
    return total


def regular_point_check(s: MahlerSystem, alpha: Sequence, k: int = DEFAULT_K) -> Regular | Singular | Unknown:
    """Scan ``delta(T^k alpha)`` and certify that the orbit enters a zero-free disc."""
    alpha = _check_point(s.T, alpha)
    delta = _strip_monomial(singularity_polynomial(s))
    if not delta.field.is_rational:
        return Unknown("singularity polynomial has irrational coefficients")
    d0 = abs(delta.constant_term().to_rational())
    rest = sum(abs(c.to_rational()) for e, c in delta.terms.items() if any(e))
    radius = None
    if d0 != 0:
        radius = Fraction(1) if rest == 0 else min(Fraction(1), d0 / (2 * rest))
    point: list[Fraction] | None = alpha
    for step in range(k + 1):
        if radius is not None and all(abs(a) < 1 for a in alpha):
            if _decay_margin(s.T, alpha, step) >= 1 / radius - 1:
                return Regular(step, radius)
        if point is None:
            break
        val = _eval_exact_or_ball(delta, point)
        if isinstance(val, Ball):
            if val.contains_zero():
                return Unknown(f"cannot separate delta from zero at step {step}")
        elif val.is_zero():
            return Singular(step)
        if max(abs(x.numerator).bit_length() + x.denominator.bit_length() for x in point) > _EXACT_BITS:
            point = None
        else:
            point = [_prod_pow(point, row) for row in s.T.rows]
    return Unknown(f"orbit did not reach a certified zero-free disc within {k} steps")


def _prod_pow(alpha, row) -> Fraction:
    v = Fraction(1)
    for a, e in zip(alpha, row):
        v *= a**e
    return v
