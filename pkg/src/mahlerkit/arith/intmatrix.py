"""Dense integer matrices and the Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import DimensionError, DomainError


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def scalar(cls, n: int, q: int) -> "IntMatrix":
        return cls([[q * int(i == j) for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise DimensionError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def __pow__(self, k: int) -> "IntMatrix":
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            raise DomainError("negative matrix power")
        result, base = IntMatrix.identity(self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for r in self.rows for v in r)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if not self.is_square():
            raise DimensionError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        n, sign, prev = self.nrows, 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def block_diag(self, other: "IntMatrix") -> "IntMatrix":
        m, n = self.shape
        p, q = other.shape
        rows = [list(r) + [0] * q for r in self.rows]
        rows += [[0] * n + list(r) for r in other.rows]
        return IntMatrix(rows)

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ a @ V == D`` and ``d_1 | d_2 | ...``.

    ``U`` and ``V`` are unimodular; diagonal entries of ``D`` are non-negative.
    """
    m, n = a.shape
    A = [list(r) for r in a.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivots = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not pivots:
                break
            _, pi, pj = min(pivots)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return IntMatrix(U), IntMatrix(A), IntMatrix(V)


def snf_diagonal(a: IntMatrix) -> list[int]:
    _, d, _ = smith_normal_form(a)
    return [d[i, i] for i in range(min(d.shape))]


def left_kernel(a: IntMatrix) -> list[tuple[int, ...]]:
    """Z-basis of ``{e : e @ a == 0}``."""
    u, d, _ = smith_normal_form(a)
    rank = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
    return [u.rows[i] for i in range(rank, a.nrows)]


def rational_solve(rows: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction] | None:
    """Solve ``x @ rows == target`` over Q for linearly independent ``rows``."""
    s = len(rows)
    if s == 0:
        return [] if not any(target) else None
    # Gauss on the transposed system: columns are rows[k]
    n = len(target)
    aug = [[Fraction(rows[k][j]) for k in range(s)] + [Fraction(target[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(s):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][s] != 0 for i in range(r, n)):
        return None
    x = [Fraction(0)] * s
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][s]
    return x
