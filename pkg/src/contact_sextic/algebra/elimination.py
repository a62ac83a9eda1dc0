"""Resultants, discriminants, gcds and square-free decomposition.

The Sylvester determinant is evaluated by fraction-free (Bareiss) elimination
over the polynomial ring.  Matrix entries are converted to a packed
representation in which a monomial is a single integer (one bit field per
variable, most significant variable first), so monomial multiplication is an
integer addition and lex comparison is integer comparison.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from ..errors import InexactDivision, ZeroDegree, ZeroLeadingCoefficient, ZeroPolynomial
from . import univariate as U
from .poly import Coeff, MultiPoly, qdiv, var_key


@dataclass(frozen=True)
class SquareFreePart:
    factor: MultiPoly
    multiplicity: int


# ------------------------------------------------------------ packed kernel

class _Packing:
    def __init__(self, variables: tuple[str, ...], max_exp: int):
        self.variables = variables
        self.bits = max(2, (max_exp + 1).bit_length() + 1)
        n = len(variables)
        self.shifts = [self.bits * (n - 1 - i) for i in range(n)]
        self.guard = sum(1 << (s + self.bits - 1) for s in self.shifts)
        self.mask = (1 << self.bits) - 1

    def pack(self, p: MultiPoly) -> dict[int, Coeff]:
        idx = [self.variables.index(v) for v in p.variables]
        out = {}
        for e, c in p.terms.items():
            k = 0
            for i, x in zip(idx, e):
                k |= x << self.shifts[i]
            out[k] = c
        return out

    def unpack(self, d: dict[int, Coeff]) -> MultiPoly:
        terms = {tuple((k >> s) & self.mask for s in self.shifts): c for k, c in d.items()}
        return MultiPoly(terms, self.variables)


def _pmul(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict[int, Coeff] = {}
    get = out.get
    bl = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bl:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _psub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _pdiv(a: dict, b: dict, guard: int) -> dict:
    """Exact quotient in packed form; borrow into a guard bit means a remainder."""
    if not a:
        return {}
    lm = max(b)
    lc = b[lm]
    rest = [(k, c) for k, c in b.items() if k != lm]
    rem = dict(a)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    queued = set(rem)
    quo: dict[int, Coeff] = {}
    while heap:
        m = -heapq.heappop(heap)
        queued.discard(m)
        c = rem.pop(m, 0)
        if not c:
            continue
        diff = m + guard - lm
        if diff < 0 or diff & guard != guard:
            raise InexactDivision("nonzero remainder in exact division")
        qk = diff - guard
        qc = qdiv(c, lc)
        quo[qk] = qc
        for k, cb in rest:
            nk = qk + k
            nv = rem.get(nk, 0) - qc * cb
            if nv:
                rem[nk] = nv
                if nk not in queued:
                    queued.add(nk)
                    heapq.heappush(heap, -nk)
            else:
                rem.pop(nk, None)
    return quo


def bareiss_determinant(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Determinant of a square matrix of polynomials, fraction-free."""
    n = len(matrix)
    if n == 0:
        return MultiPoly.const(1)
    variables = sorted({v for row in matrix for p in row for v in p.variables}, key=var_key)
    # Hadamard-style degree bound: per row the max degree, summed, doubled for
    # the intermediate products.
    max_exp = 0
    for v in variables:
        bound = sum(max((p.degree(v) for p in row), default=0) for row in matrix)
        max_exp = max(max_exp, bound)
    pk = _Packing(tuple(variables), 2 * max_exp + 1)
    m = [[pk.pack(p) for p in row] for row in matrix]
    sign = 1
    prev: dict[int, Coeff] = {0: 1}
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly()
        piv = m[k][k]
        for i in range(k + 1, n):
            rik = m[i][k]
            row = m[i]
            for j in range(k + 1, n):
                t = _pmul(row[j], piv) if row[j] else {}
                if rik and m[k][j]:
                    t = _psub(t, _pmul(rik, m[k][j]))
                row[j] = _pdiv(t, prev, pk.guard) if prev != {0: 1} else t
            row[k] = {}
        prev = piv
    det = pk.unpack(m[n - 1][n - 1])
    return det if sign > 0 else -det


# ------------------------------------------------------------- resultants

def sylvester_matrix(u: MultiPoly, v: MultiPoly, var: str) -> list[list[MultiPoly]]:
    """Sylvester matrix with u-rows first, coefficients highest degree first."""
    m, n = u.degree(var), v.degree(var)
    if m < 1 or n < 1:
        raise ZeroDegree(f"both polynomials need positive degree in {var} (got {m}, {n})")
    uc = list(reversed(u.coefficients(var)))
    vc = list(reversed(v.coefficients(var)))
    zero = MultiPoly()
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + uc + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + vc + [zero] * (size - i - n - 1))
    return rows


def resultant(u: MultiPoly, v: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant of ``u`` and ``v`` with respect to ``var``."""
    return bareiss_determinant(sylvester_matrix(u, v, var))


def discriminant_wrt(f: MultiPoly, var: str) -> MultiPoly:
    """``(-1)^(d(d-1)/2) Res(f, f', var) / lc(f)``, so disc(y^3+py+q) = -4p^3-27q^2."""
    d = f.degree(var)
    lc = f.leading_coefficient(var)
    if lc.is_zero():
        raise ZeroLeadingCoefficient("leading coefficient is the zero polynomial")
    if d < 2:
        raise ZeroDegree(f"discriminant needs degree >= 2 in {var}, got {d}")
    r = resultant(f, f.diff(var), var).exact_div(lc)
    return -r if (d * (d - 1) // 2) % 2 else r


# --------------------------------------------------------- univariate tools

def _univariate_var(*ps: MultiPoly) -> str:
    names = {v for p in ps for v in p.variables}
    if len(names) > 1:
        raise ValueError(f"univariate polynomials expected, got variables {sorted(names)}")
    return names.pop() if names else "x"


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic gcd of two univariate polynomials (not both zero)."""
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    var = _univariate_var(f, g)
    return MultiPoly.from_dense(U.gcd_q(f.to_dense(var), g.to_dense(var)), var)


def square_free_decomposition(f: MultiPoly) -> tuple[Fraction, list[SquareFreePart]]:
    """Yun decomposition: ``f == content * prod(part.factor ** part.multiplicity)``.

    Factors are monic, square-free and pairwise coprime; parts are listed by
    increasing multiplicity.
    """
    if f.is_zero():
        raise ZeroPolynomial("square-free decomposition of the zero polynomial")
    var = _univariate_var(f)
    lc, parts = U.square_free_q(f.to_dense(var))
    return lc, [SquareFreePart(MultiPoly.from_dense(p, var), m) for p, m in parts]


def polynomial_remainder(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    var = _univariate_var(f, g)
    _, r = U.divmod_q(f.to_dense(var), g.to_dense(var))
    return MultiPoly.from_dense(r, var)
