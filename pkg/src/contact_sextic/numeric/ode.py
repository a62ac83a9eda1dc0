"""Explicit form of the 7th order equation and an adaptive Runge-Kutta integrator.

The equation is solved for the top derivative,

    y7 = (70 y3^2 y4 y6 + 49 y3^2 y5^2 - 280 y3 y4^2 y5 + 175 y4^4) / (10 y3^3),

and integrated as a first-order system in ``(y, y', ..., y^(6))`` with the
Dormand-Prince 5(4) pair.  The leading coefficient ``10 y3^3`` vanishes on
the singular locus, so integration stops once ``|y'''|`` drops below a guard.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..curves import Jet7
from ..errors import SingularJet, StepLimitExceeded

log = logging.getLogger(__name__)

COMPLETED = "completed"
SINGULARITY_APPROACHED = "singularity_approached"


def y7_from_values(y3, y4, y5, y6):
    """Top derivative from ``y''' .. y^(6)`` with no singularity guard."""
    num = 70 * y3 * y3 * y4 * y6 + 49 * y3 * y3 * y5 * y5 - 280 * y3 * y4 * y4 * y5 + 175 * y4 ** 4
    return num / (10 * y3 ** 3)


def y7_from_jet(j: Jet7, eps_sing: float = 1e-8) -> float:
    y3, y4, y5, y6 = (float(v) for v in j.derivatives[3:7])
    if abs(y3) < eps_sing:
        raise SingularJet(f"|y'''| = {abs(y3):.3g} is below {eps_sing:g}")
    return y7_from_values(y3, y4, y5, y6)


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-10
    atol: float = 1e-12
    max_steps: int = 100_000
    eps_sing: float = 1e-8
    fixed_step: Optional[float] = None  # disables adaptivity, for convergence studies

    def __post_init__(self):
        if self.rtol <= 0 or self.atol <= 0 or self.eps_sing <= 0:
            raise ValueError("tolerances and the singularity guard must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")
        if self.fixed_step is not None and self.fixed_step <= 0:
            raise ValueError("fixed_step must be positive")


@dataclass
class Trajectory:
    """Accepted samples; ``states[i]`` is ``(y, y', ..., y^(6))`` at ``xs[i]``."""

    xs: np.ndarray
    states: np.ndarray
    status: str
    steps: int = 0
    rejected: int = 0
    evaluations: dict = field(default_factory=dict)

    @property
    def y(self) -> np.ndarray:
        return self.states[:, 0]

    def at(self, x: float) -> np.ndarray:
        """State at a requested ``x_eval`` point."""
        return self.evaluations[float(x)]

    def to_csv(self) -> str:
        head = "x," + ",".join(["y"] + [f"y{k}" for k in range(1, 7)])
        rows = [",".join(repr(float(v)) for v in (x, *s)) for x, s in zip(self.xs, self.states)]
        return "\n".join([head, *rows]) + "\n"


# Dormand-Prince 5(4) tableau
_C = np.array([0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1, 1])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B = np.array([35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0])
_E = _B - np.array([5179 / 57600, 0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])


def _rhs(state: np.ndarray) -> np.ndarray:
    out = np.empty(7)
    out[:6] = state[1:]
    out[6] = y7_from_values(*state[3:7])
    return out


def _step(y: np.ndarray, h: float, k1: np.ndarray):
    ks = [k1]
    for i in range(1, 7):
        yi = y + h * sum(a * k for a, k in zip(_A[i], ks))
        ks.append(_rhs(yi))
    # FSAL: stage 7 is evaluated at the 5th order solution
    y5 = y + h * sum(b * k for b, k in zip(_B, ks) if b)
    err = h * sum(e * k for e, k in zip(_E, ks))
    return y5, err, ks[-1]


def _initial_step(y, f0, direction, rtol, atol):
    sc = atol + rtol * np.abs(y)
    d0 = np.sqrt(np.mean((y / sc) ** 2))
    d1 = np.sqrt(np.mean((f0 / sc) ** 2))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    f1 = _rhs(y + direction * h0 * f0)
    d2 = np.sqrt(np.mean(((f1 - f0) / sc) ** 2)) / h0
    h1 = max(1e-6, h0 * 1e-3) if max(d1, d2) <= 1e-15 else (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1)


def integrate(start: Jet7, x_end: float, cfg: IntegratorConfig = IntegratorConfig(),
              x_eval: Sequence[float] = ()) -> Trajectory:
    """Integrate from the 6-jet ``start`` to ``x_end``.

    Steps are shortened to land exactly on each ``x_eval`` point; the states
    there are available through :meth:`Trajectory.at`.
    """
    y = np.array([float(v) for v in start.derivatives[:7]])
    x = float(start.x0)
    y7_from_jet(Jet7(x, tuple(y)), cfg.eps_sing)
    x_end = float(x_end)
    direction = 1.0 if x_end >= x else -1.0
    stops = sorted({float(v) for v in x_eval if (v - x) * direction >= 0
                    and (x_end - v) * direction >= 0}, key=lambda v: direction * v)
    evaluations = {v: y.copy() for v in stops if v == x}
    stops = [v for v in stops if v != x]

    xs, states = [x], [y.copy()]
    f = _rhs(y)
    h = cfg.fixed_step or _initial_step(y, f, direction, cfg.rtol, cfg.atol)
    err_prev = 1e-4
    steps = rejected = 0
    status = COMPLETED
    while (x_end - x) * direction > 0:
        if steps + rejected >= cfg.max_steps:
            raise StepLimitExceeded(f"{cfg.max_steps} steps reached at x = {x}")
        target = stops[0] if stops else x_end
        clipped = abs(target - x) <= h * (1 + 1e-12)
        hs = abs(target - x) if clipped else h
        y_new, err, f_new = _step(y, direction * hs, f)
        if cfg.fixed_step is None:
            sc = cfg.atol + cfg.rtol * np.maximum(np.abs(y), np.abs(y_new))
            en = float(np.sqrt(np.mean((err / sc) ** 2)))
            if not np.isfinite(en):
                en = 1e10
            if en > 1.0:
                rejected += 1
                h = hs * max(0.2, 0.9 * en ** -0.2)
                continue
            # PI controller (Gustafsson)
            fac = 0.9 * max(en, 1e-10) ** (-0.7 / 5) * err_prev ** (0.4 / 5)
            h_next = hs * min(5.0, max(0.2, fac))
            err_prev = max(en, 1e-4)
            h = h_next if not clipped else max(h, h_next)
        steps += 1
        x = target if clipped else x + direction * hs
        y, f = y_new, f_new
        xs.append(x)
        states.append(y.copy())
        if stops and x == stops[0]:
            evaluations[stops.pop(0)] = y.copy()
        if abs(y[3]) < cfg.eps_sing:
            status = SINGULARITY_APPROACHED
            log.info("stopping at x=%g: |y'''| below guard", x)
            break
    return Trajectory(np.array(xs), np.array(states), status, steps, rejected, evaluations)
