"""Exact dense matrix helpers over the integers and rationals.

Matrices are plain tuples of row tuples. Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = tuple[tuple, ...]


class SingularMatrixError(ArithmeticError):
    pass


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"cannot multiply {shape(a)} by {shape(b)}")
    cols = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def permute(a: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    """Entry (i, j) of the result is a[rows[i]][cols[j]]."""
    return tuple(tuple(a[r][c] for c in cols) for r in rows)


def is_skew_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == -a[j][i] for i in range(n) for j in range(i, n)
    )


def _integer_rows(a: Matrix) -> list[list[int]]:
    # scaling a row by a nonzero constant does not change rank
    out = []
    for row in a:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * den) for x in row])
    return out


def rank(a: Matrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    rows = _integer_rows(a)
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    r = 0
    prev = 1
    for col in range(n):
        pivot = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        for i in range(r + 1, m):
            rows[i] = [(p * rows[i][j] - rows[i][col] * rows[r][j]) // prev for j in range(n)]
        prev = p
        r += 1
        if r == m:
            break
    return r


def determinant(a: Matrix) -> Fraction:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    dens = [lcm(*(Fraction(x).denominator for x in row)) for row in a]
    rows = _integer_rows(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
        prev = rows[k][k]
    scale = 1
    for d in dens:
        scale *= d
    return Fraction(sign * rows[n - 1][n - 1], scale)


def inverse(a: Matrix) -> Matrix:
    """Exact inverse with Fraction entries; raises SingularMatrixError."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("inverse of a non-square matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def clear_denominators(a: Matrix) -> tuple[Matrix, int]:
    """Return (mu * a, mu) with mu the least positive integer making mu * a integral."""
    mu = 1
    for row in a:
        for x in row:
            mu = lcm(mu, Fraction(x).denominator)
    return tuple(tuple(int(Fraction(x) * mu) for x in row) for row in a), mu


def content(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def solve(a: Matrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One exact solution of a x = b (free variables set to 0), or None."""
    m = len(a)
    n = len(a[0]) if a else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        p = aug[r][col]
        aug[r] = [x / p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in aug):
        return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return tuple(x)
