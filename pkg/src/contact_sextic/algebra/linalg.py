"""Small dense linear algebra over Q (Gauss-Jordan on Fraction matrices)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _copy(a: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in a]


def rref(a: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    m = _copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1]) if a else 0


def det(a: Sequence[Sequence]) -> Fraction:
    m = _copy(a)
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def solve_combination(columns: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_j columns[j] == target``, or None."""
    n = len(columns)
    aug = [[col[i] for col in columns] + [target[i]] for i in range(len(target))]
    m, piv = rref(aug)
    if n in piv:
        return None
    sol = [Fraction(0)] * n
    for row, c in zip(m, piv):
        sol[c] = row[n]
    return sol


def inertia(a: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix.

    Congruence diagonalisation; a zero diagonal with a nonzero off-diagonal
    entry is fixed by adding the partner row and column first.
    """
    m = _copy(a)
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if m[i][i]), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # row_i += row_j ; col_i += col_j
            m[i] = [x + y for x, y in zip(m[i], m[j])]
            for row in m:
                row[i] += row[j]
            k = i
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            if m[i][k]:
                f = m[i][k] / d
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
        for i in active:
            m[k][i] = m[i][k] = Fraction(0)
    return pos, neg, n - pos - neg
