"""Certified partial summation of power series at rational points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, lcm, log2, log10
from typing import Sequence

from ..arith.ball import Ball
from ..errors import DomainError
from ..systems.points import Singular, apply_power, regular_point_check
from ..systems.system import MahlerSystem
from .streams import CoefficientStream, hecke_mahler_stream


@dataclass(frozen=True)
class CertifiedValue:
    value: Ball
    terms: int
    tail: Fraction
    provenance: str
    p: int

    def to_json(self) -> dict:
        digits = ceil(self.p * log10(2)) + 2
        return {
            "value": {"mid": self.value.mid_decimal(digits), "rad": self.value.rad_decimal()},
            "terms": self.terms,
            "p": self.p,
        }


def tail_bound(c: Fraction, d: int, x: Fraction, n: int) -> Fraction:
    """Upper bound on ``sum_{k > n} C (k+1)^d x^k`` for ``0 <= x < 1``."""
    if x == 0:
        return Fraction(0)
    m = n + 1
    if d == 0:
        return c * x**m / (1 - x)
    if d == 1:
        return c * x**m * ((m + 1) - m * x) / (1 - x) ** 2
    # the term ratio is at most rho for every k >= m
    rho = Fraction(m + 2, m + 1) ** d * x
    if rho >= 1:
        return Fraction(10**9)
    return c * (m + 1) ** d * x**m / (1 - rho)


def _terms_needed(c: Fraction, d: int, x: Fraction, bits: int) -> int:
    """Smallest convenient ``N`` with tail after ``N`` at most ``2^-bits``."""
    if x == 0:
        return 0
    eps = Fraction(1, 1 << bits)
    lx = log2(x.denominator) - log2(x.numerator)
    n = max(1, ceil(bits / lx))
    while tail_bound(c, d, x, n) > eps:
        n += max(4, n // 8)
    return n


def _mag_bits(x: Fraction) -> int:
    x = abs(x)
    if x == 0:
        return 0
    return max(0, x.numerator.bit_length() - x.denominator.bit_length() + 1)


def _finish(total: Fraction, err: Fraction, p: int, terms: int, provenance: str) -> CertifiedValue:
    # the 2^-p-2 slack makes balls at p and p + 2 or more nest
    slack = Fraction(1, 1 << (p + 2))
    prec = p + _mag_bits(total) + 8
    return CertifiedValue(Ball._make(total, err + slack, prec), terms, err, provenance, p)


def _partial_sum(coeffs: Sequence[Fraction], alpha: Fraction) -> Fraction:
    """``sum c_n alpha^n`` in integer Horner form."""
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    a, b = alpha.numerator, alpha.denominator
    acc = 0
    bpow = 1
    for c in reversed(coeffs):
        acc = acc * a + int(c * den) * bpow
        bpow *= b
    bpow //= b
    return Fraction(acc, den * bpow)


def eval_series(s: CoefficientStream, alpha, p: int) -> CertifiedValue:
    """Ball of radius at most ``2^-p`` around ``sum a_n alpha^n``."""
    alpha = Fraction(alpha)
    if abs(alpha) >= 1:
        raise DomainError("evaluation point must satisfy |alpha| < 1")
    if p < 1:
        raise DomainError("precision must be positive")
    prov = f"{s.label} at {alpha}"
    if alpha == 0:
        a0 = s.terms(1)[0]
        return CertifiedValue(Ball.exact(a0, p + _mag_bits(a0) + 8), 1, Fraction(0), prov, p)
    x = abs(alpha)
    n = _terms_needed(s.C, s.d, x, p + 2)
    coeffs = s.terms(n + 1)
    total = _partial_sum(coeffs, alpha)
    return _finish(total, tail_bound(s.C, s.d, x, n), p, n + 1, prov)


def eval_hecke_mahler(omega, alpha, p: int) -> CertifiedValue:
    return eval_series(hecke_mahler_stream(omega), alpha, p)


def eval_cobham(c, alpha: Sequence, p: int) -> list[CertifiedValue]:
    """Values of the Cobham components ``f_a`` at a point of the open polydisk.

    The term at position ``n`` has total degree ``n`` and modulus at most
    ``max|alpha_i|^n``, so the tail after ``N`` is ``x^(N+1) / (1 - x)``.
    """
    m = c.morphism
    alpha = [Fraction(a) for a in alpha]
    if len(alpha) != len(m.alphabet):
        raise DomainError("point dimension differs from the alphabet size")
    x = max(abs(a) for a in alpha)
    if x >= 1:
        raise DomainError("evaluation point must lie in the open unit polydisk")
    n = _terms_needed(Fraction(1), 0, x, p + 2)
    word = m.prefix(n + 1)
    sums = [Fraction(0)] * len(alpha)
    mono = Fraction(1)
    for ch in word:
        k = m.index(ch)
        sums[k] += mono
        mono *= alpha[k]
    tail = tail_bound(Fraction(1), 0, x, n)
    pt = ",".join(str(a) for a in alpha)
    return [_finish(v, tail, p, n + 1, f"f_{a} at ({pt})") for a, v in zip(m.alphabet, sums)]


def companion_values(s: CoefficientStream, q: int, order: int, alpha, p: int,
                     inhomogeneous: bool = False) -> list[CertifiedValue]:
    """``(f(alpha), f(alpha^q), ..., f(alpha^(q^(order-1)))[, 1])``."""
    alpha = Fraction(alpha)
    out = [eval_series(s, alpha ** (q**k), p) for k in range(order)]
    if inhomogeneous:
        out.append(CertifiedValue(Ball.exact(1, p), 0, Fraction(0), "constant 1", p))
    return out


def _ball(v) -> Ball:
    return v.value if isinstance(v, CertifiedValue) else v


def eval_residual(s: MahlerSystem, alpha: Sequence, at_alpha: Sequence, at_t_alpha: Sequence) -> Ball:
    """``f(alpha) - A(alpha) f(T alpha)``; returns the widest component ball."""
    alpha = [Fraction(a) for a in alpha]
    reg = regular_point_check(s, alpha)
    if isinstance(reg, Singular):
        raise DomainError(f"point is singular (delta vanishes after {reg.k} steps)")
    if len(at_alpha) != s.size or len(at_t_alpha) != s.size:
        raise DomainError("value vectors must match the system size")
    lhs = [_ball(v) for v in at_alpha]
    rhs = [_ball(v) for v in at_t_alpha]
    prec = max(b.prec for b in lhs + rhs) + 64
    res = []
    for i in range(s.size):
        acc = lhs[i]
        for j in range(s.size):
            e = s.A.entries[i][j]
            if e.is_zero():
                continue
            a_ij = e.evaluate(alpha).to_rational()
            acc = acc - Ball.exact(a_ij, prec) * rhs[j]
        res.append(acc)
    return max(res, key=lambda b: (b.rad, abs(b.mid)))


def system_residual(s: MahlerSystem, stream: CoefficientStream, alpha, p: int, order: int | None = None) -> Ball:
    """Residual of a univariate companion system, evaluated from one stream."""
    if s.nvars != 1:
        raise DomainError("companion residuals are univariate")
    q = s.q
    size = s.size - (1 if s.inhomogeneous else 0)
    order = order or size
    alpha = Fraction(alpha)
    v0 = companion_values(stream, q, order, alpha, p, s.inhomogeneous)
    v1 = companion_values(stream, q, order, alpha**q, p, s.inhomogeneous)
    return eval_residual(s, [alpha], v0, v1)


def cobham_residual(c, alpha: Sequence, p: int) -> Ball:
    alpha = [Fraction(a) for a in alpha]
    t_alpha = apply_power(c.T, alpha, 1)
    return eval_residual(c.system, alpha, eval_cobham(c, alpha, p), eval_cobham(c, t_alpha, p))
