import math
from fractions import Fraction

import pytest

from contact_sextic.contact import PointTransformationParams, point_pushforward
from contact_sextic.curves import implicit_jet
from contact_sextic.families import canonical_curve, general_solution
from contact_sextic.numeric import series as S


def test_mul_inv_div():
    a = [Fraction(1), Fraction(2), Fraction(-1), Fraction(3)]
    assert S.mul(a, S.inv(a)) == [1, 0, 0, 0]
    assert S.div(a, a) == [1, 0, 0, 0]
    with pytest.raises(Exception):
        S.inv([0, 1])


def test_compose_and_reverse():
    n = 6
    g = [0, Fraction(2), Fraction(1), 0, Fraction(-1), 0, 0]
    r = S.reverse(g)
    assert S.compose(g, r) == [0, 1, 0, 0, 0, 0, 0]
    # exp(2h) - 1 composed into log(1 + u)
    log1p = [0] + [Fraction((-1) ** (k + 1), k) for k in range(1, n + 1)]
    e = [0] + [Fraction(2 ** k, math.factorial(k)) for k in range(1, n + 1)]
    assert S.compose(log1p, e) == [0, 2, 0, 0, 0, 0, 0]


def test_power_and_jet_round_trip():
    a = [Fraction(1), Fraction(1), 0, 0]
    assert S.power(a, 3) == [1, 3, 3, 1]
    jet = [Fraction(k * k) for k in range(7)]
    assert S.to_jet(S.from_jet(jet)) == jet


def test_solve_implicit_circle():
    # Y^2 + h^2 - 1 = 0 around (0, 1): sqrt(1 - h^2)
    n = 8
    c0 = [Fraction(-1), 0, Fraction(1)] + [0] * (n - 2)
    Y = S.solve_implicit([c0, [0] * (n + 1), [1] + [0] * n], Fraction(1))
    want = [Fraction(math.comb(2 * k, k), (1 - 2 * k) * 4 ** k) * 1 for k in range(n // 2 + 1)]
    assert Y[0::2] == want
    assert all(c == 0 for c in Y[1::2])


def test_transform_jet_matches_implicit_jet():
    p = PointTransformationParams(Fraction(1, 3), Fraction(-1, 2), Fraction(1, 5), Fraction(2),
                                  Fraction(3, 2), Fraction(1, 7), Fraction(1, 4))
    canon, _ = canonical_curve()
    base = implicit_jet(canon, 0, 0)
    X0, jet = S.transform_jet(list(base.derivatives), Fraction(0),
                              lambda x, y: point_pushforward(p, x, y))
    imp, _ = general_solution(p)
    want = implicit_jet(imp, X0, jet[0])
    assert list(jet) == list(want.derivatives)


def test_series_arith_operators():
    a = S.SeriesArith([1, 1, 0])
    assert (2 - a).c == [1, -1, 0]
    assert (1 / a).c == [1, -1, 1]
    assert (-a ** 2).c == [-1, -2, -1]
