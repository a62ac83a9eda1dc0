import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

FROZEN = Path(__file__).parent / "oracles" / "frozen.json"


@pytest.fixture(scope="session")
def frozen():
    return json.loads(FROZEN.read_text())


def rand_q(rng: random.Random, num: int = 9, den: int = 9) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_nonzero_q(rng: random.Random, num: int = 9, den: int = 9) -> Fraction:
    while True:
        v = rand_q(rng, num, den)
        if v:
            return v


def poly_from_terms(entries, variables):
    """Frozen ``[[exponents], "coefficient"]`` pairs to a MultiPoly."""
    from contact_sextic.algebra import MultiPoly

    out = MultiPoly()
    for exps, c in entries:
        term = MultiPoly.const(Fraction(c))
        for v, e in zip(variables, exps):
            term = term * MultiPoly.var(v) ** e
        out = out + term
    return out


def fit_case(rng: random.Random, min_separation: float = 0.1):
    """Random general-solution parameters with a 6-jet on one real branch.

    Points whose branch lies within ``min_separation * (1 + |y0|)`` of another
    real branch are redrawn: there the cubic is close to a fold and the jet
    is ill-conditioned in the parameters.
    """
    from contact_sextic.contact import PointTransformationParams
    from contact_sextic.curves import Jet7
    from contact_sextic.numeric.fitting import branch_roots, predicted_jet

    def q(lo, hi):
        return Fraction(rng.randint(int(lo * 8), int(hi * 8)), 8)

    def signed(lo, hi):
        return q(lo, hi) * rng.choice((-1, 1))

    while True:
        c = [q(-1, 1), q(-1, 1), q(-1, 1), signed(0.5, 2), signed(0.5, 2),
             q(-0.5, 0.5), q(-0.25, 0.25)]
        x0 = float(q(-1, 1))
        if abs(1 - float(c[6]) * x0) < 0.25:
            continue
        roots = sorted(y for y, _ in branch_roots([float(v) for v in c], x0))
        y0 = rng.choice(roots)
        gap = min((abs(y - y0) for y in roots if y != y0), default=float("inf"))
        if gap < min_separation * (1 + abs(y0)):
            continue
        jet = predicted_jet([float(v) for v in c], x0, y0)
        return PointTransformationParams(*c), Jet7(x0, tuple(jet))


def perturbed(params, rng: random.Random, rel: float = 0.01):
    from contact_sextic.contact import PointTransformationParams

    return PointTransformationParams(*(float(v) * (1 + rel * rng.choice((-1, 1)))
                                       for v in params.as_tuple()))
