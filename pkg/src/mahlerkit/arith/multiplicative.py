"""Multiplicative (in)dependence of nonzero rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from ..errors import DomainError
from .intmatrix import IntMatrix, left_kernel, rational_solve, smith_normal_form
from .lattice import lll_reduce
from .rational import factor_rational


@dataclass(frozen=True)
class Independent:
    def to_json(self) -> dict:
        return {"verdict": "Independent"}


@dataclass(frozen=True)
class DependentWitness:
    exponents: tuple[int, ...]

    def to_json(self) -> dict:
        return {"verdict": "Dependent", "witness": list(self.exponents)}


def _exponent_table(values: Sequence[Fraction]) -> tuple[list[int], list[list[int]]]:
    facts = [factor_rational(v) for v in values]
    primes = sorted({p for f in facts for p in f})
    return primes, [[f.get(p, 0) for p in primes] for f in facts]


def multiplicative_product(values: Sequence[Fraction], exps: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for v, e in zip(values, exps):
        out *= Fraction(v) ** e
    return out


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    v = [x // g for x in v] if g else list(v)
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def mult_indep(values) -> Independent | DependentWitness:
    """Decide whether ``prod values_i**e_i == 1`` has a nonzero integer solution.

    Signs count: ``-1`` is treated as torsion, so a witness always satisfies
    the product identity exactly, not merely in absolute value.
    """
    vals = [Fraction(v) for v in values]
    if not vals:
        raise DomainError("empty value list")
    if any(v == 0 for v in vals):
        raise DomainError("zero is not multiplicatively independent of anything")
    primes, table = _exponent_table(vals)
    signs = [1 if v < 0 else 0 for v in vals]
    if primes:
        kernel = left_kernel(IntMatrix(table))
    else:
        kernel = [tuple(int(i == j) for j in range(len(vals))) for i in range(len(vals))]
    if not kernel:
        return Independent()
    if len(kernel) > 1:
        kernel = [tuple(r) for r in lll_reduce(kernel).rows]

    def even(v):
        w = _primitive(v)
        if sum(s * e for s, e in zip(signs, w)) % 2:
            w = tuple(2 * x for x in w)
        return w

    cands = [even(k) for k in kernel]
    for i in range(len(kernel)):
        for j in range(i + 1, len(kernel)):
            cands.append(even([a + b for a, b in zip(kernel[i], kernel[j])]))
            cands.append(even([a - b for a, b in zip(kernel[i], kernel[j])]))
    best = min(cands, key=lambda w: (sum(x * x for x in w), [-x for x in w]))
    return DependentWitness(best)


@dataclass(frozen=True)
class ExponentDecomposition:
    """``points[i] == signs[i] * prod base[j] ** exponents[i][j]``."""

    signs: tuple[int, ...]
    base: tuple[Fraction, ...]
    exponents: tuple[tuple[int, ...], ...]

    def reconstruct(self) -> list[Fraction]:
        out = []
        for s, row in zip(self.signs, self.exponents):
            out.append(s * multiplicative_product(self.base, row))
        return out

    def to_json(self) -> dict:
        from .rational import format_rational

        return {
            "signs": list(self.signs),
            "base": [format_rational(b) for b in self.base],
            "exponents": [list(r) for r in self.exponents],
        }


def _lattice_det_gcd(rows: Sequence[Sequence[int]]) -> list[int]:
    if not rows:
        return []
    _, d, _ = smith_normal_form(IntMatrix(rows))
    return [d[i, i] for i in range(min(d.shape)) if d[i, i]]


def lvdp_decompose(points) -> ExponentDecomposition:
    """Write each nonzero rational as ``+-`` a monomial in independent positive rationals.

    The base is taken from the input points themselves when a subset of them
    generates the whole exponent lattice; otherwise from the Smith basis of
    the prime-exponent lattice.
    """
    pts = [Fraction(p) for p in points]
    if any(p == 0 for p in pts):
        raise DomainError("zero point")
    signs = tuple(-1 if p < 0 else 1 for p in pts)
    primes, table = _exponent_table([abs(p) for p in pts])
    if not primes:
        return ExponentDecomposition(signs, (), tuple(() for _ in pts))

    # greedy choice of input rows
    chosen: list[int] = []
    for i, row in enumerate(table):
        if not any(row):
            continue
        trial = [table[j] for j in chosen] + [row]
        if len(_lattice_det_gcd(trial)) == len(trial):
            chosen.append(i)
    full = _lattice_det_gcd(table)
    sub = _lattice_det_gcd([table[j] for j in chosen])
    basis_rows: list[list[int]]
    if _prod(full) == _prod(sub) and len(full) == len(sub):
        basis_rows = [table[j] for j in chosen]
    else:
        u, d, v = smith_normal_form(IntMatrix(table))
        # rows of D @ V^-1 span the row lattice of the table
        vinv = _unimodular_inverse(v)
        basis_rows = []
        for i in range(min(d.shape)):
            if d[i, i]:
                r = [d[i, i] * x for x in vinv.rows[i]]
                basis_rows.append(r)
        basis_rows = [list(r) for r in lll_reduce(basis_rows).rows] if len(basis_rows) > 1 else basis_rows
        basis_rows = [r if next(x for x in r if x) > 0 else [-x for x in r] for r in basis_rows]
    base = tuple(_from_exponents(primes, r) for r in basis_rows)
    exps = []
    for row in table:
        x = rational_solve(basis_rows, row)
        if x is None or any(c.denominator != 1 for c in x):
            raise AssertionError("exponent lattice basis does not generate the inputs")
        exps.append(tuple(int(c) for c in x))
    return ExponentDecomposition(signs, base, tuple(exps))


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _from_exponents(primes, row) -> Fraction:
    out = Fraction(1)
    for p, e in zip(primes, row):
        out *= Fraction(p) ** e
    return out


def _unimodular_inverse(v: IntMatrix) -> IntMatrix:
    n = v.nrows
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(v.rows)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return IntMatrix([[int(x) for x in r[n:]] for r in aug])
