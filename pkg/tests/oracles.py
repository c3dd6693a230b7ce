"""Naive reference implementations the package is checked against.

Nothing here imports mahlerkit; each oracle is the most direct reading of
a definition, and speed is irrelevant.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath


def thue_morse(n: int) -> int:
    return bin(n).count("1") % 2


def paperfolding(n: int) -> int:
    """Hills are 1: for n = 2^k m with m odd, the term is 1 iff m = 1 mod 4."""
    if n == 0:
        return 0
    while n % 2 == 0:
        n //= 2
    return 1 if n % 4 == 1 else 0


def baum_sweet(n: int) -> int:
    """1 iff the binary expansion of n has no block of zeros of odd length."""
    if n == 0:
        return 1
    runs = [len(r) for r in bin(n)[2:].split("1") if r]
    return int(all(r % 2 == 0 for r in runs))


def powers_of_two(n: int) -> int:
    return int(n > 0 and n & (n - 1) == 0)


def fixed_point(images: dict, seed: str, length: int) -> str:
    w = seed
    while len(w) < length:
        w = "".join(images[c] for c in w)
    return w[:length]


def fibonacci_word(length: int) -> str:
    a, b = "0", "01"
    while len(b) < length:
        a, b = b, b + a
    return b[:length]


def series_value(coeff, alpha, digits: int = 60, terms: int | None = None):
    """``sum coeff(n) alpha^n`` in mpmath, with enough terms for ``digits``."""
    with mpmath.workdps(digits + 20):
        a = mpmath.mpf(alpha.numerator) / alpha.denominator
        n_terms = terms or int((digits + 10) * 3.33 / -mpmath.log(abs(a), 2)) + 40
        return mpmath.fsum(coeff(n) * a**n for n in range(n_terms))


def floor_times_sqrt(n: int, a: int, b: int, c: int, d: int) -> int:
    """floor(n (a + b sqrt d) / c) from high precision decimals."""
    with mpmath.workdps(80):
        return int(mpmath.floor(n * (a + b * mpmath.sqrt(d)) / c))


def mult_dependent_bruteforce(values, bound: int = 4) -> bool:
    """Is there a nonzero e with |e_i| <= bound and prod v_i^e_i == 1?"""
    vals = [Fraction(v) for v in values]
    for e in itertools.product(range(-bound, bound + 1), repeat=len(vals)):
        if any(e):
            p = Fraction(1)
            for v, k in zip(vals, e):
                p *= v**k
            if p == 1:
                return True
    return False


def poly_mul(a: dict, b: dict, order: int | None = None) -> dict:
    """Product of sparse multivariate polynomials {exponent tuple: coefficient}."""
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if order is not None and sum(e) > order:
                continue
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def substitute(a: dict, t) -> dict:
    """``f(Tz)`` with ``(Tz)_i = prod_j z_j^{T_ij}``: exponent v maps to T^t v."""
    out: dict = {}
    n = len(t)
    for e, c in a.items():
        f = tuple(sum(t[i][j] * e[i] for i in range(n)) for j in range(n))
        out[f] = out.get(f, 0) + c
    return {e: c for e, c in out.items() if c}


def det(m):
    """Laplace expansion over exact entries."""
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(n))
