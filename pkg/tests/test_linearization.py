import pytest

from contact_sextic.algebra import MultiPoly
from contact_sextic.contact import GENERATORS
from contact_sextic.curves import ParametricCurve
from contact_sextic.errors import VerticalCurve
from contact_sextic.families import canonical_curve, seed_curve
from contact_sextic.numeric.linearization import characteristic, linearization_residual


@pytest.mark.parametrize("H", GENERATORS[:4] + GENERATORS[7:], ids=str)
def test_generators_solve_linearised_equation(H):
    _, par = canonical_curve()
    assert linearization_residual(H, par).is_zero()


def test_point_generators_along_seed():
    for H in GENERATORS[4:7]:
        assert linearization_residual(H, seed_curve()).is_zero()


@pytest.mark.parametrize("text", ["x^7", "y*z", "z^3"])
def test_non_symmetries_fail(text):
    _, par = canonical_curve()
    assert not linearization_residual(MultiPoly.parse(text), par).is_zero()


def test_characteristic_of_translation():
    c = ParametricCurve.parse("t", "t^3")
    assert str(characteristic(MultiPoly.parse("z"), c)) == str(c.y.diff() / c.x.diff())


def test_vertical_curve():
    with pytest.raises(VerticalCurve):
        characteristic(MultiPoly.parse("z"), ParametricCurve.parse("2", "t"))
