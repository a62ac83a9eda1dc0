import random
from fractions import Fraction

import pytest
import sympy as sp

from contact_sextic.algebra import MultiPoly
from contact_sextic.contact import (
    GENERATOR_NAMES,
    GENERATORS,
    ContactFlowParams,
    PointTransformationParams,
    apply_contact_flow,
    apply_point_transformation,
    build_algebra_table,
    contact_flow_point,
    field_from_hamiltonian,
    is_point_type,
    lagrange_bracket,
    point_pullback,
    point_pushforward,
    span_dimension,
    transform_implicit,
)
from contact_sextic.curves import ParametricCurve, implicit_incidence, ImplicitCurve, verify_solution
from contact_sextic.errors import ClosureFailure, DegenerateMap
from contact_sextic.families import CANONICAL_IMPLICIT, canonical_curve
from conftest import rand_nonzero_q, rand_q

X, Y, Z, C = sp.symbols("x y z c")


@pytest.fixture(scope="module")
def table():
    return build_algebra_table()


def test_generators_span_ten_dimensions():
    assert span_dimension(GENERATORS) == 10


def test_exactly_seven_point_type():
    flags = [is_point_type(h) for h in GENERATORS]
    assert flags == [True] * 7 + [False] * 3


@pytest.mark.parametrize("name,H", list(zip(GENERATOR_NAMES, GENERATORS)))
def test_contact_multiplier_is_h_y(name, H):
    assert field_from_hamiltonian(H).contact_multiplier() == H.diff("y")


@pytest.mark.parametrize("name,H", list(zip(GENERATOR_NAMES, GENERATORS)))
def test_contraction_recovers_hamiltonian(name, H):
    assert field_from_hamiltonian(H).contract() == H


def test_brackets_match_oracle(frozen):
    for key, want in frozen["lagrange_brackets"].items():
        i, j = (int(k) - 1 for k in key.split(","))
        got = lagrange_bracket(GENERATORS[i], GENERATORS[j])
        assert got == MultiPoly.parse(want.replace("**", "^")), key


def test_bracket_sign_convention():
    z, x = MultiPoly.parse("z"), MultiPoly.parse("x")
    assert lagrange_bracket(z, x) == -1
    assert lagrange_bracket(GENERATORS[0], GENERATORS[3]) == GENERATORS[0]


def test_table_closes_with_jacobi(table, frozen):
    assert table.dimension == 10
    assert table.jacobi_defect() == 0
    assert table.killing_determinant() == Fraction(frozen["killing_determinant"])
    assert list(table.killing_signature()) == frozen["killing_signature"]


def test_antisymmetry(table):
    for i in range(10):
        for j in range(10):
            assert all(a == -b for a, b in zip(table.structure[i][j], table.structure[j][i]))


def test_non_closing_basis_raises():
    with pytest.raises(ClosureFailure):
        build_algebra_table([MultiPoly.parse("z^2"), MultiPoly.parse("x^3")])


def test_table_json_shape(table):
    data = table.to_json()
    assert data["dimension"] == 10
    assert len(data["killing_signature"]) == 3


# --------------------------------------------------------------- flows

def _sympy_field(H):
    Hx, Hy, Hz = (sp.diff(H, v) for v in (X, Y, Z))
    return (-Hz, H - Z * Hz, Hx + Z * Hy)


@pytest.mark.parametrize("gen", ["H8", "H9", "H10"])
def test_flow_closed_form_solves_the_vector_field(gen):
    H = sp.sympify(str(GENERATORS[int(gen[1:]) - 1]).replace("^", "**"))
    flow = contact_flow_point(gen, C, X, Y, Z)
    field = _sympy_field(H)
    for k in range(3):
        lhs = sp.diff(flow[k], C)
        rhs = field[k].subs({X: flow[0], Y: flow[1], Z: flow[2]}, simultaneous=True)
        assert sp.simplify(lhs - rhs) == 0
    assert [sp.simplify(f.subs(C, 0)) for f in flow] == [X, Y, Z]


@pytest.mark.parametrize("gen", ["H8", "H9", "H10"])
def test_flows_preserve_solutions_and_contact(gen):
    _, canon = canonical_curve()
    image, z = apply_contact_flow(canon, ContactFlowParams(gen, Fraction(1, 5)))
    assert (z * image.x.diff() - image.y.diff()).is_zero()
    assert verify_solution(image)[0]


def test_h9_flow_on_parabola():
    t = ParametricCurve.parse("t", "t^2")
    image, _ = apply_contact_flow(t, ContactFlowParams("H9", Fraction(1, 5)))
    assert image.x == ParametricCurve.parse("t/(1 - 2*t/5)", "0 + t").x
    assert image.y == ParametricCurve.parse("t", "t^2/(1 - 2*t/5)^2").y


def test_unknown_flow_rejected():
    with pytest.raises(ValueError):
        ContactFlowParams("H3", Fraction(1))


# ------------------------------------------------- point transformations

def test_pushforward_inverts_pullback():
    p = PointTransformationParams(*(Fraction(v) for v in ("1/3", "-1/2", "1/5", "2", "3/2", "1/7", "1/4")))
    X0, Y0 = Fraction(2, 3), Fraction(-5, 11)
    x0, y0 = point_pushforward(p, X0, Y0)
    assert point_pullback(p, x0, y0) == (X0, Y0)


def test_transform_implicit_is_the_general_solution(frozen):
    from conftest import poly_from_terms

    p = PointTransformationParams.from_sequence([Fraction(v) for v in frozen["general_params"]])
    got = transform_implicit(CANONICAL_IMPLICIT, p)
    assert got == poly_from_terms(frozen["general_polynomial"], ["x", "y"])


def test_randomised_transform_keeps_incidence_and_solution():
    rng = random.Random(11)
    _, canon = canonical_curve()
    for _ in range(3):
        c = [rand_q(rng) for _ in range(7)]
        c[3] = rand_nonzero_q(rng)
        c[4] = rand_nonzero_q(rng)
        p = PointTransformationParams.from_sequence(c)
        image = apply_point_transformation(canon, p)
        assert implicit_incidence(ImplicitCurve(transform_implicit(CANONICAL_IMPLICIT, p)), image).is_zero()
        assert verify_solution(image)[0]


def test_translation_direction():
    # pushing forward with c6 = s moves points by -s
    p = PointTransformationParams(c6=Fraction(1, 2))
    image = apply_point_transformation(ParametricCurve.parse("t", "t^2"), p)
    assert image.x == ParametricCurve.parse("t - 1/2", "t").x


@pytest.mark.parametrize("kw", [{"c4": 0}, {"c5": 0}, {"c5": 1, "c6": 1, "c7": -1}])
def test_degenerate_maps(kw):
    p = PointTransformationParams(**{k: Fraction(v) for k, v in kw.items()})
    with pytest.raises(DegenerateMap):
        p.check()
