"""Dense univariate polynomial kernels.

Polynomials are plain lists of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.  Two flavours are used:

* integer lists, which carry numerators and denominators of
  :class:`~contact_sextic.algebra.ratfunc.RationalFunction`;
* ``Fraction`` lists, used for monic gcds and square-free parts.

The gcd is computed with a small-prime modular algorithm (Brown) followed
by a trial division, so rational-function reduction does not suffer the
coefficient swell of a Euclidean remainder sequence over Q.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd
from typing import Iterator, Sequence

from ..errors import InexactDivision, ZeroPolynomial

__all__ = [
    "strip", "add", "sub", "mul", "scale", "deriv", "evaluate", "divmod_q",
    "div_exact_int", "content", "primitive", "to_int", "gcd_int", "gcd_q",
    "square_free_q",
]


def strip(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def add(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def sub(a: Sequence, b: Sequence) -> list:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return strip(out)


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return strip(out)


def scale(a: Sequence, c) -> list:
    if c == 0:
        return []
    return [c * x for x in a]


def deriv(a: Sequence) -> list:
    return strip([i * a[i] for i in range(1, len(a))])


def evaluate(a: Sequence, t):
    acc = 0
    for c in reversed(a):
        acc = acc * t + c
    return acc


def divmod_q(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Quotient and remainder over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    db = len(b) - 1
    lb = Fraction(b[-1])
    if len(r) <= db:
        return [], strip(r)
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] / lb
        if c:
            q[k - db] = c
            for i in range(db):
                r[k - db + i] -= c * b[i]
        r[k] = Fraction(0)
    return strip(q), strip(r[:db])


def div_exact_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact quotient of integer polynomials; raises if it is not in Z[t]."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        if r:
            raise InexactDivision("nonzero remainder")
        return []
    lb = b[-1]
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c, rem = divmod(r[k], lb)
        if rem:
            raise InexactDivision("nonzero remainder")
        if c:
            q[k - db] = c
            for i in range(db):
                r[k - db + i] -= c * b[i]
    if any(r[:db]):
        raise InexactDivision("nonzero remainder")
    return strip(q)


def content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = igcd(g, c)
        if g == 1:
            break
    return g


def primitive(a: Sequence[int]) -> list[int]:
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def to_int(a: Sequence) -> tuple[Fraction, list[int]]:
    """Write a rational polynomial as ``scale * ints`` with ``ints`` primitive."""
    if not a:
        return Fraction(0), []
    den = 1
    for c in a:
        if isinstance(c, Fraction):
            den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    p = primitive(ints)
    return Fraction(ints[-1], den * p[-1]), p


# ---------------------------------------------------------------- modular gcd

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 4 759 123 141
    for a in (2, 7, 61):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _prime(i: int) -> int:
    n = (1 << 31) - 1 if i == 0 else _prime(i - 1) - 2
    while not _is_prime(n):
        n -= 2
    return n


def _primes() -> Iterator[int]:
    i = 0
    while True:
        yield _prime(i)
        i += 1


def _trim_mod(a: Sequence[int], p: int) -> list[int]:
    return strip([c % p for c in a])


def _rem_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) > db:
        c = a[-1] * inv % p
        off = len(a) - 1 - db
        if c:
            for i in range(db):
                a[off + i] = (a[off + i] - c * b[i]) % p
        a.pop()
        strip(a)
    return a


def _gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _rem_mod(a, b, p)
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _divides_int(b: Sequence[int], a: Sequence[int]) -> bool:
    try:
        div_exact_int(a, b)
    except InexactDivision:
        return False
    return True


def gcd_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd of two integer polynomials (positive leading coefficient)."""
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    a, b = primitive(a), primitive(b)
    if len(a) == 1 or len(b) == 1:
        return [1]
    if a == b:
        return list(a)
    lcg = igcd(a[-1], b[-1])
    bound = min(len(a), len(b))  # one more than the largest possible degree
    acc: list[int] | None = None
    modulus = 1
    last = None
    for p in _primes():
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        g = _gcd_mod(_trim_mod(a, p), _trim_mod(b, p), p)
        if len(g) == 1:
            return [1]
        if len(g) > bound:
            continue  # unlucky prime
        g = [c * lcg % p for c in g]
        if len(g) < bound or acc is None:
            bound, acc, modulus, last = len(g), g, p, None
        else:
            # Chinese remaindering, coefficientwise
            inv = pow(modulus, -1, p)
            acc = [ca + modulus * ((cg - ca) * inv % p) for ca, cg in zip(acc, g)]
            modulus *= p
        half = modulus // 2
        cand = primitive([c - modulus if c > half else c for c in acc])
        if cand == last and _divides_int(cand, a) and _divides_int(cand, b):
            return cand
        last = cand
    raise AssertionError("unreachable")


def gcd_q(a: Sequence, b: Sequence) -> list[Fraction]:
    """Monic gcd over Q; ``gcd_q([], []) == []``."""
    if not a and not b:
        return []
    _, ia = to_int(a)
    _, ib = to_int(b)
    g = gcd_int(ia, ib)
    lc = g[-1]
    return [Fraction(c, lc) for c in g]


def _div_q(a: Sequence, b: Sequence) -> list[Fraction]:
    q, r = divmod_q(a, b)
    if r:
        raise InexactDivision("nonzero remainder")
    return q


def square_free_q(a: Sequence) -> tuple[Fraction, list[tuple[list[Fraction], int]]]:
    """Yun's square-free decomposition over Q.

    Returns ``(lc, [(monic factor, multiplicity), ...])`` with factors of
    positive degree, pairwise coprime, and ``a == lc * prod(f**m)``.
    """
    if not a:
        raise ZeroPolynomial("square-free decomposition of the zero polynomial")
    lc = Fraction(a[-1])
    f = [Fraction(c) / lc for c in a]
    parts: list[tuple[list[Fraction], int]] = []
    if len(f) == 1:
        return lc, parts
    df = deriv(f)
    g = gcd_q(f, df)
    c = _div_q(f, g)
    d = sub(_div_q(df, g), deriv(c))
    i = 1
    while len(c) > 1:
        h = gcd_q(c, d)
        if len(h) > 1:
            parts.append((h, i))
        c = _div_q(c, h)
        d = sub(_div_q(d, h), deriv(c))
        i += 1
    return lc, parts
