"""Contact vector fields, the ten-dimensional symmetry algebra, and its finite maps.

Coordinates are ``(x, y, z)`` with contact form ``omega = dy - z dx``.  A
generating function ``H(x, y, z)`` gives the field

    X_H = -H_z d/dx + (H - z H_z) d/dy + (H_x + z H_y) d/dz,

and brackets of generating functions are obtained by contracting the
commutator of their fields with ``omega``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import linalg
from .algebra.poly import MultiPoly, coerce
from .algebra.ratfunc import RationalFunction
from .curves import ParametricCurve
from .errors import ClosureFailure, DegenerateDenominator, DegenerateMap, VerticalCurve

COORDS = ("x", "y", "z")
_X, _Y, _Z = (MultiPoly.var(v) for v in COORDS)

GENERATOR_NAMES = tuple(f"H{i}" for i in range(1, 11))
GENERATORS = tuple(MultiPoly.parse(s) for s in (
    "1", "x", "x^2", "y", "z", "x*z", "x^2*z - 2*x*y",
    "z^2", "2*y*z - x*z^2", "4*x*y*z - 4*y^2 - x^2*z^2",
))

# contact form omega = -z dx + 1 dy + 0 dz
OMEGA = (-_Z, MultiPoly.const(1), MultiPoly())


@dataclass(frozen=True)
class ContactField:
    """Vector field ``Xx d/dx + Xy d/dy + Xz d/dz`` with polynomial components."""

    Xx: MultiPoly
    Xy: MultiPoly
    Xz: MultiPoly

    @property
    def components(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        return (self.Xx, self.Xy, self.Xz)

    def apply(self, f: MultiPoly) -> MultiPoly:
        """Directional derivative ``X(f)``."""
        return sum((c * f.diff(v) for c, v in zip(self.components, COORDS)), MultiPoly())

    def bracket(self, other: "ContactField") -> "ContactField":
        return ContactField(*(self.apply(b) - other.apply(a)
                              for a, b in zip(self.components, other.components)))

    def contract(self) -> MultiPoly:
        """``omega(X) = Xy - z Xx``."""
        return sum((w * c for w, c in zip(OMEGA, self.components)), MultiPoly())

    def lie_derivative_omega(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        """Components of ``L_X omega`` in the basis ``dx, dy, dz``."""
        out = []
        for v in COORDS:
            acc = self.apply(OMEGA[COORDS.index(v)])
            for w, comp in zip(OMEGA, self.components):
                acc = acc + w * comp.diff(v)
            out.append(acc)
        return tuple(out)

    def contact_multiplier(self) -> MultiPoly | None:
        """``c`` with ``L_X omega = c omega``, or None if no such ``c`` exists."""
        lie = self.lie_derivative_omega()
        c = lie[1]  # omega has dy-coefficient 1
        if all((l - c * w).is_zero() for l, w in zip(lie, OMEGA)):
            return c
        return None


def field_from_hamiltonian(H: MultiPoly) -> ContactField:
    Hz = H.diff("z")
    return ContactField(-Hz, H - _Z * Hz, H.diff("x") + _Z * H.diff("y"))


def lagrange_bracket(H: MultiPoly, G: MultiPoly) -> MultiPoly:
    """``omega([X_H, X_G])``."""
    return field_from_hamiltonian(H).bracket(field_from_hamiltonian(G)).contract()


def is_point_type(H: MultiPoly) -> bool:
    """Generating functions affine in ``z`` are prolonged point fields."""
    return H.degree("z") <= 1


# --------------------------------------------------------- algebra table

@dataclass(frozen=True)
class AlgebraTable:
    basis: tuple
    structure: tuple   # structure[i][j][k]: {H_i, H_j} = sum_k structure[i][j][k] H_k
    killing: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def bracket_coefficients(self, i: int, j: int) -> tuple:
        return self.structure[i][j]

    def adjoint(self, i: int) -> list[list[Fraction]]:
        """Matrix of ``ad(H_i)``; column ``j`` is ``[H_i, H_j]``."""
        n = self.dimension
        return [[self.structure[i][j][k] for j in range(n)] for k in range(n)]

    def jacobi_defect(self) -> int:
        """Number of (i, j, k, m) entries where the Jacobi identity fails."""
        n = self.dimension
        C = self.structure
        bad = 0
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for m in range(n):
                        s = Fraction(0)
                        for l in range(n):
                            s += (C[i][j][l] * C[l][k][m] + C[j][k][l] * C[l][i][m]
                                  + C[k][i][l] * C[l][j][m])
                        if s:
                            bad += 1
        return bad

    def killing_determinant(self) -> Fraction:
        return linalg.det(self.killing)

    def killing_signature(self) -> tuple[int, int, int]:
        return linalg.inertia(self.killing)

    def to_json(self) -> dict:
        n = self.dimension
        brackets = {}
        for i in range(n):
            for j in range(i + 1, n):
                coeffs = {GENERATOR_NAMES[k]: str(c) for k, c in enumerate(self.structure[i][j]) if c}
                brackets[f"{GENERATOR_NAMES[i]},{GENERATOR_NAMES[j]}"] = coeffs
        return {
            "dimension": n,
            "basis": {name: str(h) for name, h in zip(GENERATOR_NAMES, self.basis)},
            "brackets": brackets,
            "killing": [[str(c) for c in row] for row in self.killing],
            "jacobi_defect": self.jacobi_defect(),
            "killing_determinant": str(self.killing_determinant()),
            "killing_signature": list(self.killing_signature()),
            "point_type": [name for name, h in zip(GENERATOR_NAMES, self.basis) if is_point_type(h)],
        }


def _monomials(p: MultiPoly) -> dict[tuple[int, ...], object]:
    idx = [p.variables.index(v) if v in p.variables else None for v in COORDS]
    return {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in p.terms.items()}


def _coordinates(polys: Sequence[MultiPoly]):
    maps = [_monomials(p) for p in polys]
    monos = sorted({e for m in maps for e in m})
    return monos, [[m.get(e, 0) for e in monos] for m in maps]


def span_dimension(polys: Sequence[MultiPoly]) -> int:
    _, rows = _coordinates(polys)
    return linalg.rank(rows)


def build_algebra_table(basis: Sequence[MultiPoly] = GENERATORS) -> AlgebraTable:
    basis = tuple(basis)
    n = len(basis)
    if span_dimension(basis) != n:
        raise ClosureFailure("generators are linearly dependent")
    zero = (Fraction(0),) * n
    C = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            br = lagrange_bracket(basis[i], basis[j])
            monos, rows = _coordinates(list(basis) + [br])
            coeffs = linalg.solve_combination(rows[:n], rows[n])
            if coeffs is None:
                raise ClosureFailure(f"{{H{i+1}, H{j+1}}} = {br} leaves the span")
            C[i][j] = tuple(coeffs)
            C[j][i] = tuple(-c for c in coeffs)
    structure = tuple(tuple(row) for row in C)
    ads = [[[structure[i][j][k] for j in range(n)] for k in range(n)] for i in range(n)]
    killing = tuple(
        tuple(sum(ads[a][r][s] * ads[b][s][r] for r in range(n) for s in range(n))
              for b in range(n))
        for a in range(n))
    return AlgebraTable(basis, structure, killing)


# ------------------------------------------------- point transformations

@dataclass(frozen=True)
class PointTransformationParams:
    """Parameters of ``(x, y) -> ((c5 x + c6)/(1 - c7 x), (c4 y + c1 + c2 x + c3 x^2)/(1 - c7 x)^2)``.

    This map pulls a curve equation back: a curve ``F(X, Y) = 0`` becomes
    ``F(Phi(x, y)) = 0``, which for the canonical sextic is exactly the
    general solution formula.  Points are pushed forward with the inverse.
    """

    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)
    c4: Fraction = Fraction(1)
    c5: Fraction = Fraction(1)
    c6: Fraction = Fraction(0)
    c7: Fraction = Fraction(0)

    @classmethod
    def from_sequence(cls, cs: Sequence) -> "PointTransformationParams":
        if len(cs) != 7:
            raise ValueError("seven parameters c1..c7 expected")
        return cls(*(Fraction(coerce(c)) if not isinstance(c, float) else c for c in cs))

    def as_tuple(self) -> tuple:
        return (self.c1, self.c2, self.c3, self.c4, self.c5, self.c6, self.c7)

    def check(self):
        if self.c4 == 0:
            raise DegenerateMap("c4 = 0 collapses the y direction")
        if self.c5 + self.c6 * self.c7 == 0:
            raise DegenerateMap("c5 + c6*c7 = 0 makes the Moebius map in x singular")


def point_pullback(p: PointTransformationParams, x, y):
    """``Phi(x, y)`` on any ring elements (numbers, rational functions)."""
    d = 1 - p.c7 * x
    return (p.c5 * x + p.c6) / d, (p.c4 * y + p.c1 + p.c2 * x + p.c3 * x * x) / (d * d)


def point_pushforward(p: PointTransformationParams, X, Y):
    """Inverse of :func:`point_pullback`."""
    x = (X - p.c6) / (p.c5 + p.c7 * X)
    d = 1 - p.c7 * x
    return x, (Y * d * d - p.c1 - p.c2 * x - p.c3 * x * x) / p.c4


def apply_point_transformation(curve: ParametricCurve,
                               p: PointTransformationParams) -> ParametricCurve:
    """Image of ``curve`` under the point transformation with parameters ``p``.

    The image of a curve ``F = 0`` satisfies ``transform_implicit(F, p) = 0``.
    """
    p.check()
    if (p.c5 + p.c7 * curve.x).is_zero():
        raise DegenerateMap("the curve is mapped to infinity")
    x, y = point_pushforward(p, curve.x, curve.y)
    return ParametricCurve(x, y)


def transform_implicit(f: MultiPoly, p: PointTransformationParams) -> MultiPoly:
    """``(1 - c7 x)^k f(Phi(x, y))`` with ``k`` the weighted degree ``max(i + 2j)``."""
    p.check()
    ix = f.variables.index("x") if "x" in f.variables else None
    iy = f.variables.index("y") if "y" in f.variables else None
    terms = [(e[ix] if ix is not None else 0, e[iy] if iy is not None else 0, c)
             for e, c in f.terms.items()]
    k = max((i + 2 * j for i, j, _ in terms), default=0)
    S = p.c5 * _X + p.c6
    D = 1 - p.c7 * _X
    W = p.c4 * _Y + p.c1 + p.c2 * _X + p.c3 * _X * _X
    out = MultiPoly()
    for i, j, c in terms:
        out = out + c * S ** i * W ** j * D ** (k - i - 2 * j)
    return out


# ------------------------------------------------------- contact flows

FLOW_GENERATORS = ("H8", "H9", "H10")


@dataclass(frozen=True)
class ContactFlowParams:
    generator: str
    parameter: Fraction

    def __post_init__(self):
        if self.generator not in FLOW_GENERATORS:
            raise ValueError(f"generator must be one of {FLOW_GENERATORS}")


def _nonzero(v) -> bool:
    if isinstance(v, RationalFunction):
        return not v.is_zero()
    return v != 0


def contact_flow_point(generator: str, c, x, y, z):
    """Time-``c`` flow of ``X_H`` for ``H`` in {H8, H9, H10}, on any ring elements."""
    if generator == "H8":
        return x - 2 * c * z, y - c * z * z, z
    if generator == "H9":
        d = 1 - c * z
        if not _nonzero(d):
            raise DegenerateDenominator("1 - c9 z vanishes identically")
        return ((x * (1 + c * z) - 2 * c * y) / d,
                (y * (1 - 2 * c * z) + c * x * z * z) / (d * d),
                z / d)
    if generator == "H10":
        d = 1 + 4 * c * y - 2 * c * x * z
        if not _nonzero(d):
            raise DegenerateDenominator("1 + 4 c10 y - 2 c10 x z vanishes identically")
        return (x / d,
                (y + 4 * c * y * y - 4 * c * x * y * z + c * x * x * z * z) / (d * d),
                z / d)
    raise ValueError(f"unknown flow generator {generator!r}")


def slope(curve: ParametricCurve) -> RationalFunction:
    xdot = curve.x.diff()
    if xdot.is_zero():
        raise VerticalCurve("x(t) is constant, z = dy/dx is undefined")
    return curve.y.diff() / xdot


def apply_contact_flow(curve: ParametricCurve,
                       f: ContactFlowParams) -> tuple[ParametricCurve, RationalFunction]:
    z = slope(curve)
    xt, yt, zt = contact_flow_point(f.generator, f.parameter, curve.x, curve.y, z)
    return ParametricCurve(xt, yt), zt
