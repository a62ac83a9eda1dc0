from fractions import Fraction

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from contact_sextic.algebra import univariate as U

small = st.lists(st.integers(-12, 12), min_size=1, max_size=6)
X = sp.Symbol("X")


def to_sympy(a):
    return sum(sp.Rational(c) * X ** i for i, c in enumerate(a))


@given(small, small, small)
@settings(max_examples=60, deadline=None)
def test_gcd_int_recovers_common_factor(a, b, g):
    a, b, g = U.strip(a), U.strip(b), U.strip(g)
    if not a or not b or not g:
        return
    got = U.gcd_int(U.mul(a, g), U.mul(b, g))
    want = sp.Poly(sp.gcd(to_sympy(U.mul(a, g)), to_sympy(U.mul(b, g))), X)
    assert sp.Poly(to_sympy(got), X).monic() == want.monic()


@given(small, small)
@settings(max_examples=60, deadline=None)
def test_divmod_q(a, b):
    b = U.strip(b)
    if not b:
        return
    q, r = U.divmod_q(a, b)
    assert U.strip(U.add(U.mul(q, b), r)) == U.strip([Fraction(c) for c in a])
    assert len(r) < len(b)


def test_square_free_yun():
    # 3 (X - 1)^3 (X + 2)^2 X
    p = U.mul(U.mul([-1, 1], U.mul([-1, 1], [-1, 1])), U.mul(U.mul([2, 1], [2, 1]), [0, 3]))
    lc, parts = U.square_free_q(p)
    assert lc == 3
    got = {m: tuple(f) for f, m in parts}
    assert got[1] == (0, 1)
    assert got[2] == (2, 1)
    assert got[3] == (-1, 1)


def test_gcd_with_large_coefficients():
    f = [10 ** 30 + 7, -(10 ** 25), 1]
    g = [3, 1]
    a, b = U.mul(f, g), U.mul(f, [5, 0, 1])
    assert U.gcd_q(a, b) == [Fraction(c, 1) for c in f]


def test_content_and_primitive():
    assert U.content([6, -9, 12]) == 3
    assert U.primitive([6, -9, 12]) == [2, -3, 4]
