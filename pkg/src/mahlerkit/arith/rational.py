"""Exact rationals: parsing, formatting and prime factorisation."""

from __future__ import annotations

import re
from fractions import Fraction

from sympy import factorint

from ..errors import DomainError

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text) -> Fraction:
    """Parse ``"a"`` or ``"a/b"`` strictly (no whitespace, no decimals).

    Integers and Fractions pass through unchanged.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise DomainError(f"expected a rational string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise DomainError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def factor_rational(q) -> dict[int, int]:
    """Return ``{prime: exponent}`` with ``|q| = prod p**e``; zero exponents omitted."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("cannot factor zero")
    out: dict[int, int] = {}
    for p, e in factorint(abs(q.numerator)).items():
        out[p] = out.get(p, 0) + e
    for p, e in factorint(q.denominator).items():
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in sorted(out.items()) if e != 0}
