"""Complex roots of univariate polynomials.

Exact input is first split into square-free parts, so repeated roots are
reported with their multiplicity instead of as a smeared cluster.  Each
square-free part is solved by companion-matrix eigenvalues (``numpy.roots``)
and then polished with Aberth-Ehrlich simultaneous iteration.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from ..algebra.elimination import square_free_decomposition
from ..algebra.poly import MultiPoly


def _horner(coeffs_high: np.ndarray, z: np.ndarray):
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in coeffs_high:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth(coeffs: Sequence[complex], max_iter: int = 100) -> np.ndarray:
    """Roots of a polynomial given highest-degree-first coefficients."""
    a = np.asarray(coeffs, dtype=complex)
    a = np.trim_zeros(a, "f")
    n = len(a) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    z = np.roots(a).astype(complex)
    # break exact ties so the Aberth correction stays finite
    for i in range(n):
        for j in range(i):
            if z[i] == z[j]:
                z[i] += 1e-8 * (1 + abs(z[i])) * np.exp(1j * (i + 1))
    absa = np.abs(a)
    active = np.ones(n, dtype=bool)
    for _ in range(max_iter):
        p, dp = _horner(a, z)
        # roots whose residual is at rounding level are frozen: near clusters
        # the correction is pure noise and would scatter them
        bound, _ = _horner(absa, np.abs(z).astype(complex))
        active &= np.abs(p) > 8 * np.finfo(float).eps * bound.real
        if not active.any():
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dp != 0, p / dp, 0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1 / diff
            np.fill_diagonal(inv, 0)
            s = inv.sum(axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w) & active, w, 0)
        z = z - w
        if np.all(np.abs(w) <= 4 * np.finfo(float).eps * (1 + np.abs(z))):
            break
    return z


def _dense_high(f) -> list:
    if isinstance(f, MultiPoly):
        var = f.variables[0] if f.variables else "x"
        return list(reversed(f.to_dense(var)))
    return list(f)


def complex_roots(f) -> list[complex]:
    """All complex roots of ``f`` with multiplicity.

    ``f`` is a univariate :class:`MultiPoly` (exact path, with square-free
    splitting) or a highest-degree-first coefficient sequence (floats).
    """
    if isinstance(f, MultiPoly):
        if f.total_degree() < 1:
            raise ValueError("polynomial of degree >= 1 expected")
        _, parts = square_free_decomposition(f)
        out: list[complex] = []
        for part in parts:
            coeffs = [complex(Fraction(c)) for c in _dense_high(part.factor)]
            roots = aberth(coeffs)
            for r in roots:
                out.extend([complex(r)] * part.multiplicity)
        return sorted(out, key=lambda r: (round(r.real, 12), r.imag))
    roots = aberth([complex(c) for c in f])
    return sorted((complex(r) for r in roots), key=lambda r: (round(r.real, 12), r.imag))


def residual_scale(coeffs_high: Sequence, r: complex) -> float:
    """``sum |a_i| |r|^i``, the natural scale for judging ``|f(r)|``."""
    acc = 0.0
    for c in coeffs_high:
        acc = acc * abs(r) + abs(complex(c))
    return acc


def real_roots(f, imag_tol: float = 1e-9) -> list[float]:
    return [r.real for r in complex_roots(f) if abs(r.imag) <= imag_tol * (1 + abs(r))]


def rational_roots(f: MultiPoly, max_den: int = 10**6) -> list[Fraction]:
    """Rational roots (without multiplicity), certified by exact evaluation.

    Candidates come from rounding real numeric roots, so rational roots with
    denominators above ``max_den`` are not detected.
    """
    if f.total_degree() < 1:
        return []
    var = f.variables[0]
    _, parts = square_free_decomposition(f)
    found: list[Fraction] = []
    for part in parts:
        for r in complex_roots(part.factor):
            if abs(r.imag) > 1e-6 * (1 + abs(r)):
                continue
            cand = Fraction(r.real).limit_denominator(max_den)
            if cand not in found and part.factor.evaluate({var: cand}) == 0:
                found.append(cand)
    return sorted(found)
