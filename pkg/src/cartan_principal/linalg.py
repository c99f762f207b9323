"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices are sequences of
rows.  Rank computations use fraction-free (Bareiss) elimination on rows
scaled to integers, so intermediate numbers stay integral.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Tuple

Vec = Tuple[Fraction, ...]


def vec(xs: Iterable) -> Vec:
    return tuple(Fraction(x) for x in xs)


def zero(n: int) -> Vec:
    return (Fraction(0),) * n


def add(u: Sequence, v: Sequence) -> Vec:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vec:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def mat_vec(m: Sequence[Sequence], u: Sequence) -> Vec:
    return tuple(dot(row, u) for row in m)


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _integer_row(row: Sequence) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    return [int(x * den) for x in fr]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free Gaussian elimination."""
    m = [_integer_row(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, ncols):
                # exact: every entry is a minor of the original matrix
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def first_dependent_index(rows: Sequence[Sequence]) -> int | None:
    """Index of the first row lying in the span of the rows before it."""
    for k in range(len(rows)):
        if rank(rows[: k + 1]) <= k:
            return k
    return None


def solve(a: Sequence[Sequence], b: Sequence) -> Vec:
    """Solve the square system ``a x = b`` exactly."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("solve expects a square system")
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(row[n] for row in m)


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    cols = [solve(a, e) for e in identity(n)]
    return transpose(cols)


def primitive_integer(u: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector.

    The first nonzero coordinate of the result is positive.
    """
    fr = [Fraction(x) for x in u]
    if all(x == 0 for x in fr):
        raise ValueError("cannot normalize the zero vector")
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def proportional(u: Sequence, v: Sequence) -> bool:
    """True when u and v are nonzero and span the same line."""
    if is_zero(u) or is_zero(v):
        return False
    return rank([u, v]) == 1
