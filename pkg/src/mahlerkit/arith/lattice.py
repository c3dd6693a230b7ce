"""Integral LLL reduction and knapsack-lattice integer-relation search.

``lll_reduce`` is the all-integer variant (Cohen, *A Course in Computational
Algebraic Number Theory*, Alg. 2.6.7): Gram-Schmidt data is kept as the
integers ``d_i`` and ``lambda_{ij} = d_j mu_{ij}``, so no rounding ever enters
the reduction itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log2
from typing import Sequence

from ..errors import DomainError, PrecisionError
from .ball import Ball
from .intmatrix import IntMatrix

DELTA = Fraction(99, 100)
GUARD_BITS = 32


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis, delta: Fraction = DELTA) -> IntMatrix:
    """LLL-reduce the rows of ``basis`` (an IntMatrix or list of rows)."""
    rows = basis.tolist() if isinstance(basis, IntMatrix) else [list(map(int, r)) for r in basis]
    n = len(rows)
    if n == 0:
        raise DomainError("empty basis")
    dn, dd = delta.numerator, delta.denominator
    # 1-based storage to follow the textbook indices
    b = [None] + rows
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l]:
            q = (2 * lam[k][l] + d[l]) // (2 * d[l])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swap(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k]
        d[k - 1] = B

    d[1] = _dot(b[1], b[1])
    if d[1] == 0:
        raise DomainError("basis rows are linearly dependent")
    if n == 1:
        return IntMatrix([b[1]])
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _dot(b[k], b[j])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k] = u
            if d[k] == 0:
                raise DomainError("basis rows are linearly dependent")
        red(k, k - 1)
        if dd * (d[k] * d[k - 2] + lam[k][k - 1] ** 2) < dn * d[k - 1] ** 2:
            swap(k, kmax)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                red(k, l)
            k += 1
    return IntMatrix(b[1:])


def is_lll_reduced(basis: IntMatrix, delta: Fraction = DELTA) -> bool:
    """Check size reduction and the Lovasz condition in exact rationals."""
    rows = [[Fraction(x) for x in r] for r in basis.rows]
    n = len(rows)
    star: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = rows[i][:]
        for j in range(i):
            mu[i][j] = _dot(rows[i], star[j]) / norms[j]
            v = [a - mu[i][j] * c for a, c in zip(v, star[j])]
        star.append(v)
        norms.append(_dot(v, v))
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if norms[k] < (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True


@dataclass(frozen=True)
class RelationCertificate:
    """Either an integer relation or a bounded-height null record."""

    coefficients: tuple[int, ...] | None
    height_bound: int
    precision: int
    residual: Ball | None = None
    shortest_norm_sq: int | None = field(default=None, compare=False)

    @property
    def found(self) -> bool:
        return self.coefficients is not None

    def to_json(self) -> dict:
        out = {"height_bound": self.height_bound, "precision": self.precision}
        if self.coefficients is not None:
            out["coefficients"] = list(self.coefficients)
            out["residual"] = {"mid": self.residual.mid_decimal(30), "rad": self.residual.rad_decimal()}
        else:
            out["none_up_to"] = {"H": self.height_bound, "p": self.precision}
        return out


def _normalize_sign(c: Sequence[int]) -> tuple[int, ...]:
    for x in c:
        if x:
            return tuple(c) if x > 0 else tuple(-y for y in c)
    return tuple(c)


def _effective_precision(values: Sequence[Ball]) -> int | None:
    bits = None
    for v in values:
        if v.rad == 0:
            continue
        b = v.rel_accuracy_bits()
        bits = b if bits is None else min(bits, b)
    return bits


def required_precision(m: int, height: int) -> int:
    """Minimum working precision ``m * (log2 H + 16)`` in bits."""
    return int(m * (log2(max(height, 2)) + 16)) + 1


def find_integer_relation(values: Sequence[Ball], height: int, prec: int | None = None) -> RelationCertificate:
    """Search for ``c`` with ``max|c_i| <= height`` and ``sum c_i v_i == 0``.

    Returns a certificate carrying either the relation (re-verified in ball
    arithmetic) or a null record proving, via the LLL approximation bound,
    that no relation of that height exists for any point in the balls.
    Raises :class:`PrecisionError` when the balls are too wide to decide.
    """
    m = len(values)
    if m < 2:
        raise DomainError("need at least two values")
    if height < 1:
        raise DomainError("height bound must be positive")
    values = list(values)
    nonzero = [abs(v.mid) for v in values if v.mid != 0]
    if nonzero:
        lim = min(nonzero) / (1 << 64)
        if any(v.rad >= lim for v in values if v.rad):
            raise PrecisionError("ball radii exceed 2^-64 of the smallest midpoint")
    need = required_precision(m, height)
    avail = _effective_precision(values)
    if prec is None:
        prec = avail if avail is not None else need + 64
    elif avail is not None and prec > avail:
        raise PrecisionError(f"requested {prec} bits but values carry only {avail}")
    if prec < need:
        raise PrecisionError(f"precision too low: have {prec} bits, need {need} for m={m}, H={height}")

    scale_exp = prec - GUARD_BITS
    scale = 1 << scale_exp
    # normalise so the largest magnitude is about 1
    top = max((abs(v.mid) for v in values), default=Fraction(1))
    norm_exp = max(0, top.numerator.bit_length() - top.denominator.bit_length() + 1)
    scale_f = Fraction(scale, 1 << norm_exp)
    ints = []
    for v in values:
        x = v.mid * scale_f
        ints.append((2 * x.numerator + x.denominator) // (2 * x.denominator))
    basis = [[int(i == j) for j in range(m)] + [ints[i]] for i in range(m)]
    reduced = lll_reduce(basis)

    for row in reduced.rows:
        c = row[:m]
        if not any(c) or max(abs(x) for x in c) > height:
            continue
        combo = Ball.exact(0, prec)
        for ci, v in zip(c, values):
            combo = combo + v * ci
        if combo.contains_zero():
            c = _normalize_sign(c)
            res = Ball.exact(0, prec)
            for ci, v in zip(c, values):
                res = res + v * ci
            return RelationCertificate(c, height, prec, res)

    # Null certificate: a height-H relation gives a lattice vector of squared
    # length at most bound; LLL guarantees |b1|^2 <= alpha^(m-1) * lambda_1^2.
    maxrad = max(v.rad for v in values)
    tail = m * height * (Fraction(1, 2) + scale_f * maxrad)
    bound_sq = m * height * height + tail * tail
    alpha = 1 / (DELTA - Fraction(1, 4))
    b1 = reduced.rows[0]
    b1_sq = _dot(b1, b1)
    if b1_sq > alpha ** (m - 1) * bound_sq:
        return RelationCertificate(None, height, prec, None, b1_sq)
    raise PrecisionError(
        f"lattice has short non-relation vectors at {prec} bits; increase precision for H={height}"
    )
