"""Decision rules for algebraic (in)dependence of Hecke-Mahler values.

Every verdict names the criterion it rests on.  The criteria are the
published results on Hecke-Mahler values: the two-value criterion, the
distinct-fields theorem (which contains Masser's single-parameter theorem),
Masser's single-point theorem, the even/odd splitting identity, and the
reduction of any relation to a linear one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from ..arith.rational import format_rational
from ..errors import DomainError
from .quadratic import QuadraticIrrational, equiv_pm_mod_z, integer_shift

PAIR_CRITERION = "two-value criterion: dependent iff equal points and omega_1 = +-omega_2 mod Z"
DISTINCT_FIELDS = "distinct-fields theorem: distinct omegas in pairwise distinct quadratic fields, distinct points per omega"
SINGLE_POINT = "single-point theorem (Masser): +-omega_i pairwise distinct mod Z"
SPLIT_IDENTITY = "even/odd splitting identity f_w(z) + f_w(-z) - 2 f_2w(z^2) = 0"
LINEARITY_NOTE = "same field, outside theorem scope; any relation must be linear (linearity reduction theorem)"


@dataclass(frozen=True)
class HeckeItem:
    omega: QuadraticIrrational
    alpha: Fraction
    label: str = ""

    def __post_init__(self):
        if not 0 < abs(self.alpha) < 1:
            raise DomainError("Hecke-Mahler points need 0 < |alpha| < 1")

    def name(self, k: int) -> str:
        return self.label or f"f[{self.omega}]({format_rational(self.alpha)})"


@dataclass(frozen=True)
class Independent:
    theorem: str

    def to_json(self) -> dict:
        return {"verdict": "Independent", "theorem": self.theorem}


@dataclass(frozen=True)
class Dependent:
    theorem: str
    reason: str
    items: tuple[int, ...] = ()
    # integer coefficients on the listed items followed by the constant 1
    coefficients: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "verdict": "Dependent",
            "theorem": self.theorem,
            "reason": self.reason,
            "witness": {"items": list(self.items), "coefficients": list(self.coefficients)},
        }


@dataclass(frozen=True)
class Unknown:
    note: str
    theorem: str = field(default="")

    def to_json(self) -> dict:
        out = {"verdict": "Unknown", "note": self.note}
        if self.theorem:
            out["theorem"] = self.theorem
        return out


def pair_relation(w1: QuadraticIrrational, w2: QuadraticIrrational, alpha: Fraction) -> tuple[int, int, int] | None:
    """Integer ``(u, v, c)`` with ``u f_w1(a) + v f_w2(a) + c = 0`` when ``w2 = +-w1 + k``.

    Uses ``f_{w+k}(z) = f_w(z) + k z / (1 - z)^2`` and
    ``f_{-w}(z) = -f_w(z) - z / (1 - z)``.
    """
    sk = integer_shift(w1, w2)
    if sk is None:
        return None
    s, k = sk
    a = Fraction(alpha)
    const = k * a / (1 - a) ** 2 - (a / (1 - a) if s < 0 else 0)
    # f_w2 = s f_w1 + const
    den = const.denominator
    u, v, c = s * den, -den, const.numerator
    if u < 0:
        u, v, c = -u, -v, -c
    return u, v, c


def hm_pair_decision(w1: QuadraticIrrational, a1, w2: QuadraticIrrational, a2) -> Dependent | Independent:
    a1, a2 = Fraction(a1), Fraction(a2)
    for a in (a1, a2):
        if not 0 < abs(a) < 1:
            raise DomainError("Hecke-Mahler points need 0 < |alpha| < 1")
    if a1 == a2 and equiv_pm_mod_z(w1, w2):
        u, v, c = pair_relation(w1, w2, a1)
        return Dependent(PAIR_CRITERION, "equal points and omega_1 = +-omega_2 mod Z", (0, 1), (u, v, c))
    return Independent(PAIR_CRITERION)


def _split_pattern(items: Sequence[HeckeItem]) -> tuple[int, int, int] | None:
    for i, x in enumerate(items):
        for j, y in enumerate(items):
            if j == i or y.alpha != -x.alpha or y.omega != x.omega:
                continue
            for k, w in enumerate(items):
                if k in (i, j):
                    continue
                if w.alpha == x.alpha**2 and w.omega == x.omega * 2:
                    return i, j, k
    return None


def hm_family_decision(items: Sequence[HeckeItem]) -> Independent | Dependent | Unknown:
    items = list(items)
    if not items:
        raise DomainError("empty family")
    n = len(items)
    for i in range(n):
        for j in range(i + 1, n):
            x, y = items[i], items[j]
            if x.alpha == y.alpha and equiv_pm_mod_z(x.omega, y.omega):
                u, v, c = pair_relation(x.omega, y.omega, x.alpha)
                return Dependent(PAIR_CRITERION, "equal points and omega_i = +-omega_j mod Z", (i, j), (u, v, c))
    pat = _split_pattern(items)
    if pat is not None:
        return Dependent(SPLIT_IDENTITY, "items (w, a), (w, -a), (2w, a^2) present", pat, (1, 1, -2, 0))
    if n == 1:
        return Independent("single value: transcendence of Hecke-Mahler values")
    if n == 2:
        return Independent(PAIR_CRITERION)
    omegas: list[QuadraticIrrational] = []
    for it in items:
        if it.omega not in omegas:
            omegas.append(it.omega)
    fields = [w.d for w in omegas]
    if len(set(fields)) == len(fields):
        # per omega the points are distinct, otherwise the pair rule fired
        return Independent(DISTINCT_FIELDS)
    if len({it.alpha for it in items}) == 1:
        return Independent(SINGLE_POINT)
    return Unknown(LINEARITY_NOTE)


def relation_denominator(alpha: Fraction) -> int:
    a = Fraction(alpha)
    return lcm(((1 - a) ** 2).denominator, (1 - a).denominator)
