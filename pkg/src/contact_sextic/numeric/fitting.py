"""Newton fitting of the seven general-solution parameters to a 6-jet.

The general solution is the cubic in ``y``

    A3 y^3 + A2 y^2 + A1 y + A0 = 0,
    A3 = c4^3, A2 = 3 c4^2 q, A1 = 3 c4 q^2 + 3 c4 M, A0 = q^3 + 3 M q + 12 N,

with ``q = c1 + c2 x + c3 x^2``, ``S = c5 x + c6``, ``D = 1 - c7 x``,
``M = 3 S^4 - 6 S^2 D^2 - D^4`` and ``N = S (3 S^4 D + D^5)``.  The predicted
jet at ``x0`` is the Taylor expansion of one real branch of this cubic.
"""

from __future__ import annotations

import decimal
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..contact import PointTransformationParams
from ..curves import Jet7
from ..errors import BranchSelectionFailure, MathDomainError, MaxIterations, SingularJacobian
from . import series as S

log = logging.getLogger(__name__)

ORDER = 6
# Jets near branch points lose many digits to cancellation, so predictions
# are evaluated in extended precision and rounded to floats at the end.
PRECISION = 50


@dataclass(frozen=True)
class FitConfig:
    max_iterations: int = 25
    tol: float = 1e-11
    initial_guess: PointTransformationParams = PointTransformationParams()
    damping: float = 1.0
    fd_step: float = 1e-6

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")


@dataclass
class FitResult:
    params: PointTransformationParams
    residuals: list
    iterations: int
    branch_y: float
    history: list = field(default_factory=list)

    @property
    def residual(self) -> float:
        return max(abs(r) for r in self.residuals)

    def to_json(self) -> dict:
        out = {f"c{i}": float(v) for i, v in enumerate(self.params.as_tuple(), 1)}
        out.update(residuals=[float(r) for r in self.residuals], residual=self.residual,
                   iterations=self.iterations)
        return out


def cubic_coefficient_series(c: Sequence, x0, order: int = ORDER) -> list:
    """Series in ``h = x - x0`` of ``(A0, A1, A2, A3)``; works on floats or Fractions."""
    c1, c2, c3, c4, c5, c6, c7 = c
    n = order
    X = S.linear(x0, 1, n)
    q = S.add(S.add(S.const(c1, n), S.scale(X, c2)), S.scale(S.mul(X, X), c3))
    s = S.add(S.scale(X, c5), S.const(c6, n))
    d = S.sub(S.const(1, n), S.scale(X, c7))
    s2, d2 = S.mul(s, s), S.mul(d, d)
    s4 = S.mul(s2, s2)
    M = S.sub(S.sub(S.scale(s4, 3), S.scale(S.mul(s2, d2), 6)), S.mul(d2, d2))
    d5 = S.mul(S.mul(d2, d2), d)
    N = S.mul(s, S.add(S.scale(S.mul(s4, d), 3), d5))
    A3 = S.const(c4 ** 3, n)
    A2 = S.scale(q, 3 * c4 ** 2)
    A1 = S.add(S.scale(S.mul(q, q), 3 * c4), S.scale(M, 3 * c4))
    A0 = S.add(S.add(S.mul(S.mul(q, q), q), S.scale(S.mul(M, q), 3)), S.scale(N, 12))
    return [A0, A1, A2, A3]


def branch_roots(c: Sequence, x0: float) -> list[tuple[float, float]]:
    """Real roots ``y0`` of the cubic at ``x0`` with ``|dF/dy|`` there."""
    A = [a[0] for a in cubic_coefficient_series(c, x0, 0)]
    if A[3] == 0:
        raise BranchSelectionFailure("c4 = 0: the cubic degenerates")
    out = []
    for r in np.roots([float(A[3]), float(A[2]), float(A[1]), float(A[0])]):
        scale = 1 + abs(r)
        if abs(r.imag) <= 1e-9 * scale:
            y = float(r.real)
            fy = 3 * A[3] * y * y + 2 * A[2] * y + A[1]
            out.append((y, abs(float(fy))))
    return out


def select_branch(c: Sequence, x0: float, y_target: float) -> float:
    """Real root closest to ``y_target``; ties go to the largest ``|dF/dy|``."""
    roots = branch_roots(c, x0)
    if not roots:
        raise BranchSelectionFailure(f"no real point above x = {x0}")
    best = min(abs(y - y_target) for y, _ in roots)
    close = [(y, fy) for y, fy in roots if abs(y - y_target) <= best + 1e-12 * (1 + best)]
    return max(close, key=lambda r: r[1])[0]


def predicted_jet(c: Sequence, x0: float, y_target: float, order: int = ORDER) -> list:
    """``(y, y', ..., y^(order))`` at ``x0`` on the branch nearest ``y_target``."""
    y0 = select_branch(c, x0, y_target)
    with decimal.localcontext() as ctx:
        ctx.prec = PRECISION
        D = decimal.Decimal
        cd = [D(float(v)) for v in c]
        coeffs = cubic_coefficient_series(cd, D(float(x0)), order)
        A = [a[0] for a in coeffs]
        y = D(y0)
        for _ in range(4):
            fy = (3 * A[3] * y + 2 * A[2]) * y + A[1]
            if fy == 0:
                raise BranchSelectionFailure("the selected branch is singular (dF/dy = 0)")
            y -= (((A[3] * y + A[2]) * y + A[1]) * y + A[0]) / fy
        try:
            Y = S.solve_implicit(coeffs, y)
        except (MathDomainError, decimal.DivisionByZero, decimal.InvalidOperation) as exc:
            raise BranchSelectionFailure(str(exc)) from exc
        return [float(v) for v in S.to_jet(Y)]


def _residuals(c: np.ndarray, data: Jet7, weights: np.ndarray) -> np.ndarray:
    pred = predicted_jet(list(c), float(data.x0), float(data.derivatives[0]))
    return (np.array(pred) - np.array([float(v) for v in data.derivatives[:7]])) / weights


def fit_parameters(data: Jet7, cfg: FitConfig = FitConfig()) -> FitResult:
    """Damped Newton on ``r_k(c) = (y^(k)_pred - y^(k)_data)/max(1, |y^(k)_data|)``.

    The Jacobian is taken by central differences.  A step is halved until
    the residual norm decreases.
    """
    weights = np.array([max(1.0, abs(float(v))) for v in data.derivatives[:7]])
    c = np.array([float(v) for v in cfg.initial_guess.as_tuple()])
    r = _residuals(c, data, weights)
    history = [float(np.max(np.abs(r)))]
    for it in range(cfg.max_iterations + 1):
        if np.max(np.abs(r)) <= cfg.tol:
            return FitResult(_params(c), list(r), it, select_branch(list(c), float(data.x0),
                                                                     float(data.derivatives[0])),
                             history)
        if it == cfg.max_iterations:
            break
        J = np.empty((7, 7))
        for j in range(7):
            h = cfg.fd_step * (1 + abs(c[j]))
            cp, cm = c.copy(), c.copy()
            cp[j] += h
            cm[j] -= h
            J[:, j] = (_residuals(cp, data, weights) - _residuals(cm, data, weights)) / (2 * h)
        if not np.all(np.isfinite(J)) or np.linalg.cond(J) > 1e14:
            raise SingularJacobian(f"Jacobian is singular at iteration {it}")
        delta = np.linalg.solve(J, -r)
        lam = cfg.damping
        norm0 = float(np.linalg.norm(r))
        for _ in range(40):
            trial = c + lam * delta
            try:
                rt = _residuals(trial, data, weights)
            except BranchSelectionFailure:
                rt = None
            if rt is not None and np.all(np.isfinite(rt)) and np.linalg.norm(rt) < norm0:
                break
            lam /= 2
        else:
            log.info("line search stalled at iteration %d, residual %.3g", it, norm0)
            break
        c, r = trial, rt
        history.append(float(np.max(np.abs(r))))
        log.debug("iteration %d: residual %.3g, step %.3g", it + 1, history[-1], lam)
    raise MaxIterations(f"no convergence after {len(history) - 1} iterations; "
                        f"residual {history[-1]:.3g}")


def _params(c: np.ndarray) -> PointTransformationParams:
    return PointTransformationParams(*(float(v) for v in c))


def jet_residual(params: PointTransformationParams, data: Jet7) -> float:
    """Max scaled jet mismatch of ``params`` against ``data``."""
    weights = np.array([max(1.0, abs(float(v))) for v in data.derivatives[:7]])
    return float(np.max(np.abs(_residuals(np.array([float(v) for v in params.as_tuple()]),
                                          data, weights))))
