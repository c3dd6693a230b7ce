"""Coefficient streams with explicit growth models ``|a_n| <= C (n+1)^d``."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..errors import DomainError
from ..words.dfao import Dfao
from ..words.morphism import Morphism

GROWTH_CHECK = 1 << 12


class CoefficientStream:
    """Lazily extended coefficient list of ``sum a_n z^n``.

    ``source`` is one of ``dfao``, ``morphic``, ``hecke_mahler``,
    ``closed_form`` or ``derivative``.  Instances cache their prefix and are
    meant for a single consumer.
    """

    def __init__(self, source: str, label: str, c, d: int, prefix: Callable[[int], list],
                 check: int = GROWTH_CHECK):
        if c < 0 or d < 0:
            raise DomainError("growth model needs C >= 0 and d >= 0")
        self.source = source
        self.label = label
        self.C = Fraction(c)
        self.d = int(d)
        self._prefix = prefix
        self._cache: list[Fraction] = []
        if check:
            self.verify_growth(check)

    def __repr__(self):
        return f"CoefficientStream({self.source}:{self.label}, C={self.C}, d={self.d})"

    def terms(self, count: int) -> list[Fraction]:
        if count > len(self._cache):
            want = max(count, 2 * len(self._cache))
            self._cache = [Fraction(x) for x in self._prefix(want)]
        return self._cache[:count]

    def bound(self, n: int) -> Fraction:
        return self.C * (n + 1) ** self.d

    def verify_growth(self, count: int = GROWTH_CHECK) -> None:
        for n, a in enumerate(self.terms(count)):
            if abs(a) > self.bound(n):
                raise DomainError(f"{self.label}: |a_{n}| = {abs(a)} exceeds the growth model")

    def to_json(self) -> dict:
        return {"source": self.source, "label": self.label, "C": str(self.C), "d": self.d}


def dfao_stream(a: Dfao, label: str = "dfao") -> CoefficientStream:
    def prefix(k):
        return a.terms(k)

    return CoefficientStream("dfao", label, a.max_abs_output(), 0, prefix)


def morphic_stream(m: Morphism, label: str | None = None) -> CoefficientStream:
    return CoefficientStream("morphic", label or m.name or "morphic", m.max_abs_code(), 0, m.coded_prefix)


def hecke_mahler_stream(omega, label: str | None = None) -> CoefficientStream:
    """``a_n = floor(n omega)``; ``|a_n| <= (ceil|omega| + 1)(n + 1)``."""
    from ..hecke.quadratic import QuadraticIrrational

    if not isinstance(omega, QuadraticIrrational):
        raise DomainError("Hecke-Mahler parameter must be a quadratic irrational")
    w = abs(omega.approx(20))
    c = int(w) + 2  # ceil(|omega|) + 1, since omega is irrational

    def prefix(k):
        return [omega.floor_mul(n) for n in range(k)]

    return CoefficientStream("hecke_mahler", label or f"f[{omega}]", c, 1, prefix)


def closed_form_stream(fn: Callable[[int], object], c, d: int, label: str = "closed_form") -> CoefficientStream:
    return CoefficientStream("closed_form", label, c, d, lambda k: [fn(n) for n in range(k)])


def derivative_stream(s: CoefficientStream) -> CoefficientStream:
    """Coefficients of ``f'``: ``(n+1) a_{n+1} <= C 2^d (n+1)^(d+1)``."""

    def prefix(k):
        base = s.terms(k + 1)
        return [(n + 1) * base[n + 1] for n in range(k)]

    return CoefficientStream("derivative", f"{s.label}'", s.C * 2**s.d, s.d + 1, prefix)
