"""Two-dimensional Sierpinski indicator: no common ternary digit equal to 1."""

from __future__ import annotations

from ..arith.intmatrix import IntMatrix
from ..series.puiseux import PuiseuxSeries


def sierpinski_term(n1: int, n2: int) -> int:
    while n1 or n2:
        if n1 % 3 == 1 and n2 % 3 == 1:
            return 0
        n1 //= 3
        n2 //= 3
    return 1


def sierpinski_series(order: int) -> PuiseuxSeries:
    terms = {}
    for n1 in range(order + 1):
        for n2 in range(order + 1 - n1):
            if sierpinski_term(n1, n2):
                terms[(n1, n2)] = 1
    return PuiseuxSeries(2, terms, order=order)


def sierpinski_factor(drop: tuple[int, int] | None = None) -> PuiseuxSeries:
    """``sum z1^i z2^j`` over ternary digit pairs ``(i, j) != (1, 1)``."""
    terms = {(i, j): 1 for i in range(3) for j in range(3) if (i, j) != (1, 1) and (i, j) != drop}
    return PuiseuxSeries(2, terms)


SIERPINSKI_T = IntMatrix([[3, 0], [0, 3]])
