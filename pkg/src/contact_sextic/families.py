"""Explicit solution families of the 7th order equation, plus the conic analogue."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .algebra.elimination import square_free_decomposition
from .algebra.poly import MultiPoly, coerce
from .algebra.ratfunc import RationalFunction
from .contact import (
    ContactFlowParams,
    PointTransformationParams,
    apply_contact_flow,
    apply_point_transformation,
)
from .curves import ImplicitCurve, ParametricCurve
from .errors import (
    DegenerateConic,
    DegenerateDenominator,
    DegenerateLeading,
    DegenerateMap,
    InadmissibleQuartic,
    NotOnCurve,
)
from .numeric.roots import complex_roots

Scalar = Union[int, Fraction]
_x, _y, _z, _t = (MultiPoly.var(v) for v in "xyzt")
_T = RationalFunction.variable("t")

SEED_IMPLICIT = MultiPoly.parse("y^2 + x*(x - 1)^3")
CANONICAL_IMPLICIT = MultiPoly.parse("y^3 + 3*(3*x^4 - 6*x^2 - 1)*y + 12*x*(3*x^4 + 1)")


def _q(v) -> Fraction:
    return Fraction(coerce(v))


def seed_curve() -> ParametricCurve:
    return ParametricCurve(1 / (_T ** 2 + 1), -_T ** 3 / (_T ** 2 + 1) ** 2)


def canonical_curve() -> tuple[ImplicitCurve, ParametricCurve]:
    param = ParametricCurve(_T * (_T ** 2 - 3) / (3 * (_T ** 2 + 1)),
                            -4 * _T * (_T ** 4 + 3) / (3 * (_T ** 2 + 1) ** 2))
    return ImplicitCurve(CANONICAL_IMPLICIT), param


# ------------------------------------------------------- general solution

GeneralSolutionParams = PointTransformationParams


def general_solution_polynomial(p: GeneralSolutionParams) -> MultiPoly:
    """The degree-six general solution polynomial for parameters ``c1..c7``."""
    S = p.c5 * _x + p.c6
    D = 1 - p.c7 * _x
    W = p.c4 * _y + p.c1 + p.c2 * _x + p.c3 * _x ** 2
    return (W ** 3
            + 3 * (3 * S ** 4 - 6 * S ** 2 * D ** 2 - D ** 4) * W
            + 12 * S * (3 * S ** 4 * D + D ** 5))


def general_solution(p: GeneralSolutionParams) -> tuple[ImplicitCurve, ParametricCurve]:
    if p.c4 == 0:
        raise DegenerateMap("c4 = 0")
    if p.c5 == 0 and p.c6 == 0:
        raise DegenerateMap("(c5, c6) = (0, 0)")
    p.check()
    _, canon = canonical_curve()
    return ImplicitCurve(general_solution_polynomial(p)), apply_point_transformation(canon, p)


# ------------------------------------------------------ contact family

@dataclass(frozen=True)
class ContactFamilyParams:
    b: Fraction
    b0: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction
    b4: Fraction
    b5: Fraction
    b6: Fraction

    @classmethod
    def from_sequence(cls, vals: Sequence) -> "ContactFamilyParams":
        if len(vals) != 8:
            raise ValueError("eight parameters b, b0..b6 expected")
        return cls(*(_q(v) for v in vals))

    def check(self):
        if self.b5 - self.b0 * self.b6 == 0:
            raise DegenerateDenominator("b5 - b0*b6 = 0 makes x(t) constant")


def contact_family_base(p: ContactFamilyParams) -> ParametricCurve:
    """The point-transformed seed ``((b5+b6 t^2)/(b0+t^2), (b4 t^4+b3 t^2+b2 t+b1)/(b0+t^2)^2)``."""
    p.check()
    den = p.b0 + _T ** 2
    return ParametricCurve((p.b5 + p.b6 * _T ** 2) / den,
                           (p.b4 * _T ** 4 + p.b3 * _T ** 2 + p.b2 * _T + p.b1) / den ** 2)


def _slope_numerator(p: ContactFamilyParams) -> RationalFunction:
    return ((4 * p.b4 * p.b0 - 2 * p.b3) * _T ** 3 - 3 * p.b2 * _T ** 2
            + (2 * p.b3 * p.b0 - 4 * p.b1) * _T + p.b2 * p.b0)


def displayed_slope(p: ContactFamilyParams) -> RationalFunction:
    """Closed-form slope exactly as usually printed, denominator ``2(b5 - b0 b6)(b0 t + t^3)``."""
    p.check()
    return _slope_numerator(p) / (2 * (p.b5 - p.b0 * p.b6) * (p.b0 * _T + _T ** 3))


def family_slope(p: ContactFamilyParams) -> RationalFunction:
    """``dy/dx`` of :func:`contact_family_base` in closed form.

    Differs from :func:`displayed_slope` by an overall sign: the derivative
    of ``x(t)`` is ``2 t (b0 b6 - b5)/(b0 + t^2)^2``.
    """
    p.check()
    return _slope_numerator(p) / (2 * (p.b0 * p.b6 - p.b5) * (p.b0 * _T + _T ** 3))


def contact_family(p: ContactFamilyParams) -> tuple[ParametricCurve, RationalFunction]:
    """Seven-parameter family: ``x - 2 b z``, ``y - b z^2``, ``z`` along the base curve."""
    base = contact_family_base(p)
    z = family_slope(p)
    return ParametricCurve(base.x - 2 * p.b * z, base.y - p.b * z * z), z


# ------------------------------------------------------ degree-4 family

def _as_univariate(p: MultiPoly, name: str = "X") -> MultiPoly:
    if len(p.variables) > 1:
        raise ValueError(f"{p} must be univariate")
    if p.variables and p.variables[0] != name:
        return p.subs({p.variables[0]: MultiPoly.var(name)})
    return p


def quartic_roots(P: MultiPoly) -> tuple[Fraction, Fraction, Fraction]:
    """``(lam, s, r)`` with ``P = lam (X - s)(X - r)^3``; raises if P is inadmissible."""
    P = _as_univariate(P)
    if P.degree("X") != 4:
        raise InadmissibleQuartic("P must have degree four")
    lam, parts = square_free_decomposition(P)
    mults = sorted(p.multiplicity for p in parts)
    if mults != [1, 3] or any(p.factor.degree("X") != 1 for p in parts):
        raise InadmissibleQuartic("P must have one simple and one triple root")
    roots = {p.multiplicity: -Fraction(p.factor.to_dense("X")[0]) for p in parts}
    return Fraction(lam), roots[1], roots[3]


def degree_four_family(Q: MultiPoly, P: MultiPoly) -> ImplicitCurve:
    """``(y + Q(x))^2 + P(x)`` with ``Q`` quadratic and ``P`` admissible."""
    quartic_roots(P)
    Q = _as_univariate(Q)
    if Q.degree("X") > 2:
        raise ValueError("Q must be at most quadratic")
    return ImplicitCurve((_y + Q.subs({"X": _x})) ** 2 + _as_univariate(P).subs({"X": _x}))


def degree_four_parametrization(Q: MultiPoly, P: MultiPoly) -> ParametricCurve:
    """Rational parametrisation of ``(y + Q)^2 + P = 0``.

    With ``P = lam (X - s)(X - r)^3`` and ``xi = 1/(1 + lam t^2)``:
    ``x = s + (r - s) xi``, ``y = -Q(x) + lam^2 (r - s)^2 t^3 / (1 + lam t^2)^2``.
    """
    lam, s, r = quartic_roots(P)
    Q = _as_univariate(Q)
    den = 1 + lam * _T ** 2
    x = s + (r - s) / den
    qx = sum((c * x ** i for i, c in enumerate(Q.to_dense("X")) if c), RationalFunction(0))
    y = -qx + lam ** 2 * (r - s) ** 2 * _T ** 3 / den ** 2
    return ParametricCurve(x, y)


@dataclass(frozen=True)
class QPData:
    Q: MultiPoly
    P: MultiPoly
    b: object  # scalar, or a MultiPoly such as the variable b

    def __post_init__(self):
        quartic_roots(self.P)


def uv_pair(d: QPData) -> tuple[MultiPoly, MultiPoly]:
    """``u = (y + b z^2 + Q(X))^2 + P(X)``, ``v = 4 P (z + Q')^2 + P'^2`` with ``X = x + 2 b z``."""
    Q = _as_univariate(d.Q)
    P = _as_univariate(d.P)
    X = _x + 2 * d.b * _z
    sub = {"X": X}
    u = (_y + d.b * _z ** 2 + Q.subs(sub)) ** 2 + P.subs(sub)
    v = 4 * P.subs(sub) * (_z + Q.diff("X").subs(sub)) ** 2 + P.diff("X").subs(sub) ** 2
    return u, v


# ------------------------------------------------------- new curve

def new_curve_polynomial(b) -> MultiPoly:
    """Degree-six curve from eliminating ``z`` at ``Q = 0, P = X (X - 1)^3``."""
    return ((64 * b + 1024 * b ** 3) * _y ** 3
            + ((768 * b ** 2 + 16) * _x ** 2 - 768 * _x * b ** 2 + 288 * b ** 2) * _y ** 2
            + (264 * _x ** 2 * b - 108 * b ** 3 + 192 * _x ** 4 * b - 72 * _x * b
               - 384 * _x ** 3 * b) * _y
            + (48 * _x ** 4 - 27 * b ** 2 + 54 * _x * b ** 2 - 16 * _x ** 3
               - 27 * _x ** 2 * b ** 2 - 48 * _x ** 5 + 16 * _x ** 6))


def new_curve(b) -> ImplicitCurve:
    b = _q(b)
    if 64 * b + 1024 * b ** 3 == 0:
        raise DegenerateLeading("64 b + 1024 b^3 = 0: not a cubic in y")
    return ImplicitCurve(new_curve_polynomial(b))


def new_curve_parametrization(b) -> tuple[ParametricCurve, RationalFunction]:
    """The seed moved by the ``H8`` flow with parameter ``b``."""
    return apply_contact_flow(seed_curve(), ContactFlowParams("H8", _q(b)))


def is_solution_branch(F: MultiPoly, d: QPData, x0=Fraction(1, 3), tol: float = 1e-7) -> bool:
    """Whether the resultant factor ``F(x, y)`` carries the slope selected by ``u = v = 0``.

    At real points ``(x0, y0)`` of ``F`` the roots ``z`` common to ``u`` and
    ``v`` are compared with ``dy/dx = -F_x / F_y``.  A factor is accepted iff
    such a common root equals the slope at every sampled point.
    """
    u, v = uv_pair(d)
    x0 = _q(x0)
    Fx, Fy = F.diff("x"), F.diff("y")
    ycoef = [complex(c.evaluate({"x": x0})) for c in F.coefficients("y")]
    ys = [r.real for r in complex_roots(list(reversed(ycoef))) if abs(r.imag) < 1e-9]
    checked = 0
    for y0 in ys:
        fy = Fy.evaluate({"x": float(x0), "y": y0})
        if abs(fy) < 1e-9:
            continue
        s = -Fx.evaluate({"x": float(x0), "y": y0}) / fy
        vz = [complex(c.evaluate({"x": float(x0), "y": y0})) for c in v.coefficients("z")]
        uz = [c for c in u.coefficients("z")]
        common = []
        for z in complex_roots(list(reversed(vz))):
            uval = sum(complex(c.evaluate({"x": float(x0), "y": y0})) * z ** k
                       for k, c in enumerate(uz))
            scale = sum(abs(complex(c.evaluate({"x": float(x0), "y": y0}))) * abs(z) ** k
                        for k, c in enumerate(uz))
            if abs(uval) <= tol * max(scale, 1.0):
                common.append(z)
        if not any(abs(z - s) <= tol * (1 + abs(s)) for z in common):
            return False
        checked += 1
    if not checked:
        raise NotOnCurve(f"no smooth real point of the factor above x = {x0}")
    return True


# ------------------------------------------------------------ conics

def conic_polynomial(c1, c2, c3, c4, c5) -> MultiPoly:
    return _y ** 2 - (c1 * _x ** 2 + c2 * _x * _y + c3 * _y + c4 * _x + c5)


def conic_family(c1, c2, c3, c4, c5, point=None):
    """Conic ``y^2 = c1 x^2 + c2 x y + c3 y + c4 x + c5``.

    Returns the implicit curve, plus a parametrisation through ``point``
    (lines ``(x0 + t s, y0 + s)``) when a rational point is supplied.
    """
    cs = [_q(c) for c in (c1, c2, c3, c4, c5)]
    c1, c2, c3, c4, c5 = cs
    f = conic_polynomial(*cs)
    # 3x3 symmetric matrix of the homogenised quadratic form
    M = [[-c1, -c2 / 2, -c4 / 2], [-c2 / 2, Fraction(1), -c3 / 2], [-c4 / 2, -c3 / 2, -c5]]
    det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
           - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
           + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
    if det == 0:
        raise DegenerateConic("the conic is degenerate (splits into lines)")
    curve = ImplicitCurve(f)
    if point is None:
        return curve
    x0, y0 = (_q(v) for v in point)
    if f.evaluate({"x": x0, "y": y0}) != 0:
        raise NotOnCurve(f"({x0}, {y0}) is not on the conic")
    A = 1 - c1 * _T ** 2 - c2 * _T
    B = 2 * y0 - 2 * c1 * x0 * _T - c2 * (x0 + y0 * _T) - c3 - c4 * _T
    s = -B / A
    return curve, ParametricCurve(x0 + _T * s, y0 + s)


# ------------------------------------------------------------ registry

@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple
    description: str
    build: Callable


def _build_seed(params):
    return {"parametric": seed_curve(), "implicit": ImplicitCurve(SEED_IMPLICIT)}


def _build_canform(params):
    imp, par = canonical_curve()
    return {"parametric": par, "implicit": imp}


def _build_general(params):
    defaults = PointTransformationParams().as_tuple()
    p = PointTransformationParams.from_sequence(
        [params.get(f"c{i}", defaults[i - 1]) for i in range(1, 8)])
    imp, par = general_solution(p)
    return {"parametric": par, "implicit": imp}


def _build_contact(params):
    p = ContactFamilyParams.from_sequence([params[k] for k in
                                           ("b", "b0", "b1", "b2", "b3", "b4", "b5", "b6")])
    par, z = contact_family(p)
    return {"parametric": par, "slope": z}


def _build_degree4(params):
    Q = MultiPoly.parse(str(params.get("Q", "0"))).subs({"x": MultiPoly.var("X")})
    P = MultiPoly.parse(str(params["P"])).subs({"x": MultiPoly.var("X")})
    return {"parametric": degree_four_parametrization(Q, P),
            "implicit": degree_four_family(Q, P)}


def _build_new_curve(params):
    b = _q(params["b"])
    par, z = new_curve_parametrization(b)
    return {"parametric": par, "implicit": new_curve(b), "slope": z}


def _build_conic(params):
    cs = [params[f"c{i}"] for i in range(1, 6)]
    pt = params.get("point")
    if pt is None:
        return {"implicit": conic_family(*cs)}
    imp, par = conic_family(*cs, point=[_q(v) for v in pt])
    return {"parametric": par, "implicit": imp}


FAMILIES = {
    "seed": FamilySpec("seed", (), "y^2 + x(x-1)^3 = 0 with its rational parametrisation",
                       _build_seed),
    "canform": FamilySpec("canform", (), "canonical real sextic y^3 + 3(3x^4-6x^2-1)y + 12x(3x^4+1)",
                          _build_canform),
    "general": FamilySpec("general", tuple(f"c{i}" for i in range(1, 8)),
                          "general solution: point transformations of canform", _build_general),
    "contact": FamilySpec("contact", ("b", "b0", "b1", "b2", "b3", "b4", "b5", "b6"),
                          "seven-parameter rational contact curves", _build_contact),
    "degree4": FamilySpec("degree4", ("Q", "P"), "(y+Q)^2 + P = 0, P with simple and triple root",
                          _build_degree4),
    "new_curve": FamilySpec("new_curve", ("b",), "degree-six curve from eliminating z",
                            _build_new_curve),
    "conic": FamilySpec("conic", ("c1", "c2", "c3", "c4", "c5", "point"),
                        "y^2 = c1 x^2 + c2 xy + c3 y + c4 x + c5", _build_conic),
}


def build_family(name: str, params: dict | None = None) -> dict:
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    return FAMILIES[name].build(params or {})
