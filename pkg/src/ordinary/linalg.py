"""Exact rational scalars and small dense linear algebra.

Everything here works on :class:`fractions.Fraction`, which already keeps
numerator and denominator coprime with a positive denominator, so equality
between scalars is structural.  Vectors are tuples, matrices are sequences
of rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Scalar = Fraction
Vec = tuple
Mat = Sequence[Sequence[Fraction]]


def scalar(value) -> Fraction:
    """Coerce an int, Fraction or exact string ("3", "-1/2", "0.25") to a Fraction."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction instead")
    return Fraction(value)


def vec(*components) -> tuple:
    return tuple(scalar(c) for c in components)


def add(u: Vec, v: Vec) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(k, u: Vec) -> tuple:
    return tuple(k * a for a in u)


def dot(u: Vec, v: Vec):
    return sum((a * b for a, b in zip(u, v)), 0)


def cross3(u: Vec, v: Vec) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def transpose(m: Mat) -> list[list]:
    return [list(col) for col in zip(*m)]


def _echelon(m: Mat) -> tuple[list[list[Fraction]], list[int], int]:
    """Row-reduce a copy of ``m`` to reduced echelon form.

    Returns the reduced rows, the pivot column of each nonzero row, and the
    sign of the row permutation used (needed by :func:`det`).
    """
    rows = [[Fraction(x) for x in row] for row in m]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    sign = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            sign = -sign
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                k = rows[i][c]
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots, sign


def rank(m: Mat) -> int:
    if not m or not m[0]:
        return 0
    return len(_echelon(m)[1])


def det(m: Mat) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("det needs a square matrix")
    if n == 0:
        return Fraction(1)
    # Bareiss runs on integers; clear denominators row by row first.
    rows = []
    factor = Fraction(1)
    for row in m:
        row = [Fraction(x) for x in row]
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        rows.append([int(x * lcm) for x in row])
        factor /= lcm
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1] * factor


def solve(m: Mat, b: Vec) -> tuple | None:
    """Solve the square system ``m x = b``; None when ``m`` is singular."""
    n = len(m)
    if any(len(row) != n for row in m) or len(b) != n:
        raise ValueError("solve needs an n x n matrix and a length-n vector")
    rows, pivots, _ = _echelon([list(row) + [b_i] for row, b_i in zip(m, b)])
    if pivots[:n] != list(range(n)):
        return None
    return tuple(rows[i][n] for i in range(n))


def solve_consistent(m: Mat, b: Vec) -> tuple | None:
    """One exact solution of a possibly rectangular system, or None if inconsistent.

    Free variables are set to zero.
    """
    n_cols = len(m[0])
    rows, pivots, _ = _echelon([list(row) + [b_i] for row, b_i in zip(m, b)])
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][n_cols]
    return tuple(x)


def nullspace(m: Mat) -> list[tuple]:
    """Basis of the right nullspace of ``m`` (one vector per free column)."""
    n_cols = len(m[0])
    rows, pivots, _ = _echelon(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = -rows[i][f]
        basis.append(tuple(x))
    return basis


def primitive_integers(values: Iterable) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    values = [Fraction(v) for v in values]
    if all(v == 0 for v in values):
        raise ValueError("cannot normalize the zero vector")
    lcm = 1
    for v in values:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in values]
    g = 0
    for i in ints:
        g = gcd(g, i)
    ints = [i // g for i in ints]
    if next(i for i in ints if i != 0) < 0:
        ints = [-i for i in ints]
    return tuple(ints)


def common_denominator(values: Iterable) -> int:
    lcm = 1
    for v in values:
        d = Fraction(v).denominator
        lcm = lcm * d // gcd(lcm, d)
    return lcm
