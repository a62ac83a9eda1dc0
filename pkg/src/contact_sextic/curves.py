"""Plane curves: parametric and implicit views, jets, ODE residuals, invariants."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

from .algebra.elimination import (
    discriminant_wrt,
    poly_gcd,
    resultant,
    square_free_decomposition,
)
from .algebra.poly import MultiPoly
from .algebra.ratfunc import RationalFunction, evaluate_rational, substitute_rational
from .errors import (
    CoincidentPoints,
    MathDomainError,
    NonZeroDimensional,
    NotOnCurve,
    SingularBranch,
    VerticalCurve,
)
from .numeric.roots import complex_roots, rational_roots

EPSILON = cmath.exp(1j * math.pi / 3)

# Left-hand side of the 7th order equation in jet variables y3..y7.
ODE_POLYNOMIAL = MultiPoly.parse(
    "10*y3^3*y7 - 70*y3^2*y4*y6 - 49*y3^2*y5^2 + 280*y3*y4^2*y5 - 175*y4^4")
HALPHEN_POLYNOMIAL = MultiPoly.parse("9*y2^2*y5 - 45*y2*y3*y4 + 40*y3^3")


# ---------------------------------------------------------------- types

@dataclass(frozen=True)
class ParametricCurve:
    x: RationalFunction
    y: RationalFunction

    def __post_init__(self):
        if self.x.diff().is_zero() and self.y.diff().is_zero():
            raise MathDomainError("parametrisation is constant")

    @classmethod
    def parse(cls, x: str, y: str) -> "ParametricCurve":
        return cls(RationalFunction.parse(x), RationalFunction.parse(y))

    def point(self, t):
        return self.x.evaluate(t), self.y.evaluate(t)

    def to_json(self) -> dict:
        return {"parametric": {"x": str(self.x), "y": str(self.y)}}


@dataclass(frozen=True)
class ImplicitCurve:
    f: MultiPoly

    def __post_init__(self):
        if self.f.is_zero():
            raise MathDomainError("the zero polynomial does not define a curve")
        extra = set(self.f.variables) - {"x", "y"}
        if extra:
            raise MathDomainError(f"implicit curves live in (x, y); found {sorted(extra)}")

    @classmethod
    def parse(cls, text: str) -> "ImplicitCurve":
        return cls(MultiPoly.parse(text))

    @property
    def degree(self) -> int:
        return self.f.total_degree()

    def __call__(self, x, y):
        return self.f.evaluate({"x": x, "y": y})

    def to_json(self) -> dict:
        return {"implicit": str(self.f)}


@dataclass(frozen=True)
class Jet7:
    """Point ``x0`` with ``(y, y', ..., y^(6))`` and optionally ``y^(7)``."""

    x0: object
    derivatives: tuple
    y7: Optional[object] = None

    def __post_init__(self):
        vals = (self.x0,) + tuple(self.derivatives) + ((self.y7,) if self.y7 is not None else ())
        for v in vals:
            if isinstance(v, float) and not math.isfinite(v):
                raise MathDomainError("jet entries must be finite")

    def as_floats(self) -> "Jet7":
        return Jet7(float(self.x0), tuple(float(v) for v in self.derivatives),
                    None if self.y7 is None else float(self.y7))


@dataclass(frozen=True)
class SexticForm:
    """Binary sextic ``a1 x^6 + 6 a2 x^5 + 15 a3 x^4 + 20 a4 x^3 + 15 a5 x^2 + 6 a6 x + a7``."""

    a: tuple

    WEIGHTS = (1, 6, 15, 20, 15, 6, 1)

    def __post_init__(self):
        if len(self.a) != 7:
            raise ValueError("a sextic form has 7 coefficients")

    @classmethod
    def from_polynomial(cls, p: MultiPoly, var: str = "x") -> "SexticForm":
        dense = p.to_dense(var) if not p.is_zero() else []
        if len(dense) > 7:
            raise ValueError("degree exceeds 6")
        dense = dense + [0] * (7 - len(dense))
        return cls(tuple(Fraction(dense[6 - i]) / w for i, w in enumerate(cls.WEIGHTS)))

    def to_polynomial(self, var: str = "x") -> MultiPoly:
        return MultiPoly.from_dense([self.a[6 - k] * self.WEIGHTS[6 - k] for k in range(7)], var)

    def mobius(self, a, b, c, d) -> "SexticForm":
        """Form of ``(c x + d)^6 p((a x + b)/(c x + d))``."""
        x = MultiPoly.var("x")
        num, den = a * x + b, c * x + d
        coeffs = [self.a[6 - k] * self.WEIGHTS[6 - k] for k in range(7)]
        out = sum((ck * num ** k * den ** (6 - k) for k, ck in enumerate(coeffs)), MultiPoly())
        return SexticForm.from_polynomial(out)


@dataclass(frozen=True)
class SingularPoint:
    location: tuple
    multiplicity: int
    exact: bool = True


# ---------------------------------------------------------------- jets

def jet_from_parametric(c: ParametricCurve, order: int) -> list[RationalFunction]:
    """``[y', y'', ..., y^(order)]`` along the curve, via ``d/dx = (1/x') d/dt``."""
    xdot = c.x.diff()
    if xdot.is_zero():
        raise VerticalCurve("x(t) is constant")
    out = []
    cur = c.y
    for _ in range(order):
        cur = cur.diff() / xdot
        out.append(cur)
    return out


def _residual(c: ParametricCurve, poly: MultiPoly, lo: int, hi: int) -> MultiPoly:
    jets = jet_from_parametric(c, hi)
    bindings = {f"y{k}": jets[k - 1] for k in range(lo, hi + 1)}
    return evaluate_rational(poly, bindings).numerator


def ode_residual(c: ParametricCurve) -> MultiPoly:
    """Numerator of the 7th order expression along ``c`` (zero iff ``c`` solves it)."""
    return _residual(c, ODE_POLYNOMIAL, 3, 7)


def verify_solution(c: ParametricCurve) -> tuple[bool, MultiPoly]:
    r = ode_residual(c)
    return r.is_zero(), r


def halphen_residual(c: ParametricCurve) -> MultiPoly:
    """Numerator of ``9 y''^2 y^(5) - 45 y'' y''' y'''' + 40 y'''^3`` along ``c``."""
    return _residual(c, HALPHEN_POLYNOMIAL, 2, 5)


def ode_expression(y3, y4, y5, y6, y7):
    """The 7th order expression on numeric jets."""
    return (10 * y3 ** 3 * y7 - 70 * y3 ** 2 * y4 * y6 - 49 * y3 ** 2 * y5 ** 2
            + 280 * y3 * y4 ** 2 * y5 - 175 * y4 ** 4)


def _taylor_terms(f: MultiPoly):
    ix = f.variables.index("x") if "x" in f.variables else None
    iy = f.variables.index("y") if "y" in f.variables else None
    return [(e[ix] if ix is not None else 0, e[iy] if iy is not None else 0, c)
            for e, c in f.terms.items()]


def shifted_coefficients(terms, x0, y0) -> dict[tuple[int, int], object]:
    """Coefficients of ``f(x0 + h, y0 + w)`` from ``(i, j, c)`` terms of ``f``."""
    out: dict[tuple[int, int], object] = {}
    for a, b, c in terms:
        for i in range(a + 1):
            cx = c * math.comb(a, i) * x0 ** (a - i)
            for j in range(b + 1):
                key = (i, j)
                out[key] = out.get(key, 0) + cx * math.comb(b, j) * y0 ** (b - j)
    return out


def series_jet(g: dict[tuple[int, int], object], order: int) -> list:
    """Taylor coefficients ``a_1..a_order`` of ``w(h)`` solving ``g(h, w(h)) = 0``.

    ``g`` holds the shifted coefficients with ``g[(0, 0)] == 0``.  The
    coefficient of ``h^k`` is linear in ``a_k`` with slope ``g[(0, 1)]``.
    """
    gw = g.get((0, 1), 0)
    a = [0] * (order + 1)
    maxj = max((j for (_, j) in g), default=0)
    for k in range(1, order + 1):
        # powers of w truncated at h^k, with a_k still zero
        powers = [[1] + [0] * k]
        for _ in range(maxj):
            prev = powers[-1]
            powers.append([sum(prev[m] * a[n - m] for m in range(n)) if n else 0
                           for n in range(k + 1)])
        r = 0
        for (i, j), c in g.items():
            if i <= k and c:
                r += c * powers[j][k - i]
        a[k] = -r / gw
    return a[1:]


def implicit_jet(curve: ImplicitCurve, x0, y0, order: int = 6, tol: float = 1e-9) -> Jet7:
    """``y, y', ..., y^(order)`` at a smooth point of ``f(x, y) = 0``.

    Exact for rational ``x0, y0``; floating inputs are checked against ``tol``.
    """
    exact = all(isinstance(v, (int, Fraction)) for v in (x0, y0))
    if exact:
        x0, y0 = Fraction(x0), Fraction(y0)
    terms = _taylor_terms(curve.f)
    g = shifted_coefficients(terms, x0, y0)
    f0 = g.get((0, 0), 0)
    scale = 1.0 if exact else sum(abs(complex(c)) for c in g.values())
    if (f0 != 0) if exact else (abs(f0) > tol * max(scale, 1.0)):
        raise NotOnCurve(f"f({x0}, {y0}) = {f0}")
    g[(0, 0)] = 0
    gw = g.get((0, 1), 0)
    if (gw == 0) if exact else (abs(gw) <= tol * max(scale, 1.0)):
        raise SingularBranch("df/dy vanishes at the point")
    coeffs = series_jet(g, order)
    derivs = [y0] + [math.factorial(k + 1) * a for k, a in enumerate(coeffs)]
    derivs += [0] * (7 - len(derivs))
    return Jet7(x0, tuple(derivs[:7]), derivs[7] if order >= 7 else None)


# ------------------------------------------------------- singular points

def _multiplicity(g: dict[tuple[int, int], object], tol=None) -> int:
    degs = [i + j for (i, j), c in g.items() if (c != 0 if tol is None else abs(c) > tol)]
    return min(degs) if degs else 0


def singular_points(curve: ImplicitCurve, tol: float = 1e-8) -> list[SingularPoint]:
    """Affine points with ``f = f_x = f_y = 0``, with their multiplicities.

    Candidate abscissae come from ``Res_y(f, f_y)``; rational ones are handled
    exactly, irrational ones numerically (``exact=False``, complex coordinates).
    """
    f = curve.f
    fx, fy = f.diff("x"), f.diff("y")
    dy = f.degree("y")
    if dy == 0:
        _, parts = square_free_decomposition(f)
        if any(p.multiplicity > 1 for p in parts):
            raise NonZeroDimensional("repeated vertical line component")
        return []
    if fy.degree("y") == 0:
        xs_poly = fy
    else:
        xs_poly = resultant(f, fy, "y")
    if xs_poly.is_zero():
        raise NonZeroDimensional("f and f_y share a component")
    if xs_poly.total_degree() < 1:
        return []
    terms = _taylor_terms(f)
    out: list[SingularPoint] = []
    exact_xs = rational_roots(xs_poly)
    for x0 in exact_xs:
        polys = [p.subs({"x": x0}) for p in (f, fx, fy)]
        if all(p.is_zero() for p in polys):
            raise NonZeroDimensional(f"the line x = {x0} is a singular component")
        g = poly_gcd(*[p for p in polys if not p.is_zero()][:2])
        for p in polys:
            if not p.is_zero():
                g = poly_gcd(g, p)
        if g.total_degree() < 1:
            continue
        ys = rational_roots(g)
        for y0 in ys:
            m = _multiplicity(shifted_coefficients(terms, x0, y0))
            out.append(SingularPoint((x0, y0), m, True))
        done = MultiPoly.const(1)
        for y0 in ys:
            done = done * (MultiPoly.var("y") - y0)
        rest = g.exact_div(done) if ys else g
        if rest.total_degree() >= 1:
            for y0 in complex_roots(rest):
                shifted = shifted_coefficients(terms, complex(x0), y0)
                out.append(SingularPoint((complex(x0), y0),
                                         _multiplicity(shifted, tol), False))
    # irrational candidates: numeric search
    _, parts = square_free_decomposition(xs_poly)
    for part in parts:
        for x0 in complex_roots(part.factor):
            if any(abs(x0 - complex(e)) < 1e-8 for e in exact_xs):
                continue
            fcoef = [complex(c.evaluate({"x": x0})) if not c.is_zero() else 0j
                     for c in f.coefficients("y")]
            for y0 in complex_roots(list(reversed(fcoef))):
                vals = [complex(p.evaluate({"x": x0, "y": y0})) if not p.is_zero() else 0j
                        for p in (fx, fy)]
                shifted = shifted_coefficients(terms, x0, y0)
                scale = max(1.0, sum(abs(c) for c in shifted.values()))
                if all(abs(v) <= tol * scale for v in vals):
                    if not any(not p.exact and abs(p.location[0] - x0) < 1e-7
                               and abs(p.location[1] - y0) < 1e-7 for p in out):
                        out.append(SingularPoint((x0, y0), _multiplicity(shifted, tol * scale),
                                                 False))
    return out


def chart_at_infinity(curve: ImplicitCurve, axis: str = "y") -> ImplicitCurve:
    """Affine chart of the projective closure around points at infinity.

    ``axis="y"`` sets ``y = 1`` in the homogenisation ``F(x, y, w)``; the new
    coordinates are ``(x/y, w/y)`` named ``(x, y)``, so points at infinity of
    the original curve lie on the new ``y = 0``.  ``axis="x"`` is analogous
    with coordinates ``(y/x, w/x)``.
    """
    h = curve.f.homogenize("w")
    if axis == "y":
        g = h.subs({"y": 1}).subs({"w": MultiPoly.var("v")}).subs({"v": MultiPoly.var("y")})
    elif axis == "x":
        g = h.subs({"x": 1}).subs({"y": MultiPoly.var("u"), "w": MultiPoly.var("v")})
        g = g.subs({"u": MultiPoly.var("x"), "v": MultiPoly.var("y")})
    else:
        raise ValueError("axis must be 'x' or 'y'")
    return ImplicitCurve(g)


def arithmetic_genus(d: int, deltas: Sequence[int]) -> int:
    """``(d-1)(d-2)/2 - sum(deltas)``."""
    if d < 1 or any(k < 0 for k in deltas):
        raise ValueError("degree >= 1 and nonnegative delta invariants required")
    return (d - 1) * (d - 2) // 2 - sum(deltas)


def quadratic_invariant(s: SexticForm):
    a1, a2, a3, a4, a5, a6, a7 = s.a
    return a1 * a7 - 6 * a2 * a6 + 15 * a3 * a5 - 10 * a4 ** 2


# ------------------------------------------------------------ cross-ratio

def _is_inf(z) -> bool:
    return z is None or (isinstance(z, (int, float, complex)) and cmath.isinf(z))


def cross_ratio(z1, z2, z3, z4) -> complex:
    """``(z1-z3)(z2-z4) / ((z2-z3)(z1-z4))``; ``None`` or ``inf`` denote infinity."""
    pts = [z1, z2, z3, z4]
    finite = [complex(z) for z in pts if not _is_inf(z)]
    if len(pts) - len(finite) > 1 or len(set(finite)) != len(finite):
        raise CoincidentPoints("cross-ratio needs four distinct points")

    def diff(a, b):
        return 1 if _is_inf(pts[a]) or _is_inf(pts[b]) else complex(pts[a]) - complex(pts[b])

    return diff(0, 2) * diff(1, 3) / (diff(1, 2) * diff(0, 3))


def equianharmonic_distance(roots: Sequence[complex]) -> float:
    """Distance of the roots' cross-ratio from ``{e^{i pi/3}, e^{-i pi/3}}``."""
    if len(roots) != 4:
        raise ValueError("four roots expected")
    cr = cross_ratio(*roots)
    return min(abs(cr - EPSILON), abs(cr - EPSILON.conjugate()))


def equianharmonic_check(roots: Sequence[complex], tol: float = 1e-10) -> bool:
    return equianharmonic_distance(roots) <= tol


def cross_ratio_orbit(lam: complex) -> list[complex]:
    return [lam, 1 / lam, 1 - lam, 1 / (1 - lam), lam / (lam - 1), (lam - 1) / lam]


def permuted_cross_ratios(z: Sequence[complex]) -> set:
    return {complex(round(cross_ratio(*(z[i] for i in p)).real, 9),
                    round(cross_ratio(*(z[i] for i in p)).imag, 9))
            for p in permutations(range(4))}


# --------------------------------------------------------- discriminant

def discriminant_is_cube(curve: ImplicitCurve) -> Optional[MultiPoly]:
    """The monic quartic ``Q`` with ``disc_y f = const * Q^3``, or None."""
    if curve.f.degree("y") != 3:
        raise MathDomainError("a cubic in y is required")
    d = discriminant_wrt(curve.f, "y")
    if d.is_zero() or d.total_degree() < 1:
        return None
    _, parts = square_free_decomposition(d)
    if len(parts) == 1 and parts[0].multiplicity == 3 and parts[0].factor.degree("x") == 4:
        return parts[0].factor
    return None


def implicit_incidence(curve: ImplicitCurve, param: ParametricCurve) -> MultiPoly:
    return substitute_rational(curve.f, {"x": param.x, "y": param.y})
