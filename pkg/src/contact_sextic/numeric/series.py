"""Truncated power series ``a0 + a1 h + ... + a_n h^n`` as plain lists.

Every routine works over any field the coefficients live in (``Fraction``,
``float``, ``complex``), so the float code paths can be checked against
exact arithmetic on rational data.
"""

from __future__ import annotations

import math
from typing import Sequence

from ..errors import MathDomainError

Series = list


def const(c, n: int) -> Series:
    return [c] + [0] * n


def linear(a, b, n: int) -> Series:
    """``a + b h`` truncated at order ``n``."""
    s = const(a, n)
    if n >= 1:
        s[1] = b
    return s


def add(a: Sequence, b: Sequence) -> Series:
    return [x + y for x, y in zip(a, b)]


def sub(a: Sequence, b: Sequence) -> Series:
    return [x - y for x, y in zip(a, b)]


def scale(a: Sequence, c) -> Series:
    return [c * x for x in a]


def mul(a: Sequence, b: Sequence) -> Series:
    n = len(a)
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def inv(a: Sequence) -> Series:
    if a[0] == 0:
        raise MathDomainError("series with zero constant term is not invertible")
    n = len(a)
    out = [0] * n
    out[0] = 1 / a[0]
    for k in range(1, n):
        out[k] = -sum(a[i] * out[k - i] for i in range(1, k + 1)) * out[0]
    return out


def div(a: Sequence, b: Sequence) -> Series:
    return mul(a, inv(b))


def power(a: Sequence, e: int) -> Series:
    out = const(1, len(a) - 1)
    for _ in range(e):
        out = mul(out, a)
    return out


def compose(f: Sequence, g: Sequence) -> Series:
    """``f(g(h))`` for ``g`` with zero constant term."""
    if g[0] != 0:
        raise MathDomainError("inner series must have zero constant term")
    n = len(g)
    out = const(0, n - 1)
    for c in reversed(list(f)[:n]):
        out = mul(out, g)
        out[0] = out[0] + c
    return out


def reverse(g: Sequence) -> Series:
    """Compositional inverse of ``g = g1 h + ...`` with ``g1 != 0``."""
    if g[0] != 0 or g[1] == 0:
        raise MathDomainError("series reversion needs g(0) = 0 and g'(0) != 0")
    n = len(g)
    r = linear(0, 1 / g[1], n - 1)
    # fixed point r <- r - (g(r) - h)/g1, one new coefficient per pass
    for _ in range(n):
        gr = compose(g, r)
        gr[1] = gr[1] - 1
        r = sub(r, scale(gr, 1 / g[1]))
    return r


def from_jet(derivs: Sequence) -> Series:
    """Taylor coefficients from ``(y, y', ..., y^(n))``."""
    return [d / math.factorial(k) for k, d in enumerate(derivs)]


def to_jet(s: Sequence) -> list:
    return [c * math.factorial(k) for k, c in enumerate(s)]


def solve_implicit(coeffs_y: Sequence[Sequence], y0, iterations: int | None = None) -> Series:
    """Series ``Y(h)`` with ``sum_j coeffs_y[j](h) Y^j = 0`` and ``Y(0) = y0``.

    ``coeffs_y[j]`` are series in ``h``.  Newton on series doubles the number
    of correct terms per pass; raises when ``dF/dY`` vanishes at the root.
    """
    n = len(coeffs_y[0])
    Y = const(y0, n - 1)
    passes = iterations if iterations is not None else max(1, math.ceil(math.log2(n)) + 1)
    for _ in range(passes):
        F = const(0, n - 1)
        Fy = const(0, n - 1)
        for c in reversed(coeffs_y):
            F = add(mul(F, Y), c)
        for j in range(len(coeffs_y) - 1, 0, -1):
            Fy = add(mul(Fy, Y), scale(coeffs_y[j], j))
        Y = sub(Y, div(F, Fy))
    return Y


def transform_jet(derivs: Sequence, x0, pushforward) -> tuple:
    """Jet of the image curve under a point map.

    ``pushforward(x, y)`` must accept series arguments (it is built from
    ``+ - * /`` on the helpers' list type via :class:`SeriesArith`).
    Returns ``(X0, (Y, Y', ..., Y^(n)))``.
    """
    n = len(derivs) - 1
    Ys = from_jet(derivs)
    X, Y = pushforward(SeriesArith(linear(x0, 1, n)), SeriesArith(Ys))
    X, Y = list(X.c), list(Y.c)
    X0 = X[0]
    X[0] = 0
    h_of_X = reverse(X)
    return X0, tuple(to_jet(compose(Y, h_of_X)))


class SeriesArith:
    """Operator wrapper so generic formulas can run on truncated series."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = list(c)

    def _wrap(self, other):
        if isinstance(other, SeriesArith):
            return other.c
        return const(other, len(self.c) - 1)

    def __add__(self, o):
        return SeriesArith(add(self.c, self._wrap(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return SeriesArith(sub(self.c, self._wrap(o)))

    def __rsub__(self, o):
        return SeriesArith(sub(self._wrap(o), self.c))

    def __mul__(self, o):
        return SeriesArith(mul(self.c, self._wrap(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return SeriesArith(div(self.c, self._wrap(o)))

    def __rtruediv__(self, o):
        return SeriesArith(div(self._wrap(o), self.c))

    def __neg__(self):
        return SeriesArith(scale(self.c, -1))

    def __pow__(self, e: int):
        return SeriesArith(power(self.c, e))
