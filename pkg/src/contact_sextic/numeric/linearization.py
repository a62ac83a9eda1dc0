"""Linearised equation along an exact solution, applied to a symmetry characteristic."""

from __future__ import annotations

from ..algebra.poly import MultiPoly
from ..algebra.ratfunc import RationalFunction, evaluate_rational
from ..curves import ODE_POLYNOMIAL, ParametricCurve, jet_from_parametric
from ..errors import VerticalCurve


def characteristic(H: MultiPoly, curve: ParametricCurve) -> RationalFunction:
    """``v(t) = H(x(t), y(t), y'(t))``."""
    xd = curve.x.diff()
    if xd.is_zero():
        raise VerticalCurve("x(t) is constant along the curve")
    z = curve.y.diff() / xd
    return evaluate_rational(H, {"x": curve.x, "y": curve.y, "z": z})


def linearization_operator(curve: ParametricCurve) -> list[RationalFunction]:
    """Coefficients ``dF/dy_k`` (k = 3..7) of the linearised equation along ``curve``."""
    jet = jet_from_parametric(curve, 7)  # jet[k - 1] is y^(k)
    bindings = {f"y{k}": jet[k - 1] for k in range(3, 8)}
    return [evaluate_rational(ODE_POLYNOMIAL.diff(f"y{k}"), bindings) for k in range(3, 8)]


def linearization_residual(H: MultiPoly, curve: ParametricCurve) -> MultiPoly:
    """Numerator of ``L[v] = sum_k dF/dy_k * v^(k)`` for ``v = H(x, y, y')``.

    Derivatives are in ``x``, i.e. ``d/dx = (1/x'(t)) d/dt``.  ``L[v]`` is zero
    exactly when ``H`` generates a contact symmetry of the equation (given that
    ``curve`` solves it).
    """
    v = characteristic(H, curve)
    xd = curve.x.diff()
    coeffs = linearization_operator(curve)
    derivs = [v]
    for _ in range(7):
        derivs.append(derivs[-1].diff() / xd)
    total = RationalFunction(0)
    for k, a in zip(range(3, 8), coeffs):
        total = total + a * derivs[k]
    return total.numerator
