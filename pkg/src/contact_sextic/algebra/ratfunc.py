"""Univariate rational functions over Q and substitution of them into polynomials.

Internally a :class:`RationalFunction` is ``scale * N(t) / D(t)`` with ``N``
and ``D`` primitive integer polynomials, ``gcd(N, D) = 1`` and ``D`` having a
positive leading coefficient.  The public :attr:`numerator` and
:attr:`denominator` present the same value with a monic denominator.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import UnboundVariable
from . import univariate as U
from .poly import MultiPoly, coerce


class RationalFunction:
    __slots__ = ("scale", "num", "den", "var")

    def __init__(self, numerator=0, denominator=1, var: str = "t"):
        self.var = var
        n = _dense(numerator, var)
        d = _dense(denominator, var)
        if not d:
            raise ZeroDivisionError("denominator is identically zero")
        sn, n = U.to_int(n)
        sd, d = U.to_int(d)
        self._normalise(sn / sd if n else Fraction(0), n, d)

    def _normalise(self, scale: Fraction, n: list[int], d: list[int]):
        if not n:
            self.scale, self.num, self.den = Fraction(0), [], [1]
            return
        g = U.gcd_int(n, d)
        if len(g) > 1:
            n = U.div_exact_int(n, g)
            d = U.div_exact_int(d, g)
        # make both primitive with positive leading coefficient of d
        cn = U.content(n) * (1 if n[-1] > 0 else -1)
        cd = U.content(d) * (1 if d[-1] > 0 else -1)
        self.scale = scale * Fraction(cn, cd)
        self.num = [c // cn for c in n]
        self.den = [c // cd for c in d]

    @classmethod
    def _from_ints(cls, scale: Fraction, n: list[int], d: list[int], var: str):
        obj = cls.__new__(cls)
        obj.var = var
        obj._normalise(Fraction(scale), U.strip(list(n)), U.strip(list(d)))
        return obj

    @classmethod
    def _from_q(cls, n: Sequence, d: Sequence, var: str):
        sn, ni = U.to_int(n)
        sd, di = U.to_int(d)
        return cls._from_ints(sn / sd if ni else Fraction(0), ni, di, var)

    @classmethod
    def variable(cls, var: str = "t") -> "RationalFunction":
        return cls._from_ints(Fraction(1), [0, 1], [1], var)

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "RationalFunction":
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return _eval_ast(tree.body, var)

    # ------------------------------------------------------------ views
    @property
    def numerator(self) -> MultiPoly:
        lc = self.den[-1]
        return MultiPoly.from_dense([self.scale * c / lc for c in self.num], self.var)

    @property
    def denominator(self) -> MultiPoly:
        lc = self.den[-1]
        return MultiPoly.from_dense([Fraction(c, lc) for c in self.den], self.var)

    def numerator_q(self) -> list[Fraction]:
        lc = self.den[-1]
        return [self.scale * c / lc for c in self.num]

    def denominator_q(self) -> list[Fraction]:
        lc = self.den[-1]
        return [Fraction(c, lc) for c in self.den]

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    def evaluate(self, t):
        """Value at ``t`` (exact for rationals, any numeric type otherwise)."""
        if isinstance(t, (int, Fraction)):
            n = U.evaluate(self.num, Fraction(t))
            d = U.evaluate(self.den, Fraction(t))
            if d == 0:
                raise ZeroDivisionError(f"pole at t={t}")
            return coerce(self.scale * n / d)
        return float(self.scale) * U.evaluate(self.num, t) / U.evaluate(self.den, t) \
            if not isinstance(t, complex) else \
            complex(self.scale) * U.evaluate(self.num, t) / U.evaluate(self.den, t)

    __call__ = evaluate

    # ------------------------------------------------------------ arithmetic
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.var != self.var:
                raise ValueError("rational functions in different variables")
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other, 1, self.var)
        try:
            c = Fraction(coerce(other))
        except TypeError:
            return NotImplemented
        return RationalFunction._from_ints(c, [1] if c else [], [1], self.var)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        s1, s2 = self.scale, other.scale
        p1 = s1.numerator * s2.denominator
        p2 = s2.numerator * s1.denominator
        if self.den == other.den:
            n = U.add(U.scale(self.num, p1), U.scale(other.num, p2))
            d = self.den
        else:
            n = U.add(U.scale(U.mul(self.num, other.den), p1),
                      U.scale(U.mul(other.num, self.den), p2))
            d = U.mul(self.den, other.den)
        return RationalFunction._from_ints(Fraction(1, s1.denominator * s2.denominator),
                                           n, d, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._from_ints(-self.scale, self.num, self.den, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RationalFunction(0, 1, self.var)
        # cross-cancel before multiplying to keep degrees down
        n1, d2 = _cancel(self.num, other.den)
        n2, d1 = _cancel(other.num, self.den)
        return RationalFunction._from_ints(self.scale * other.scale,
                                           U.mul(n1, n2), U.mul(d1, d2), self.var)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction._from_ints(1 / self.scale, self.den, self.num, self.var)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("integer exponent required")
        if n < 0:
            return self.inverse() ** (-n)
        num, den = [1], [1]
        bn, bd = self.num, self.den
        k = n
        while k:
            if k & 1:
                num, den = U.mul(num, bn), U.mul(den, bd)
            k >>= 1
            if k:
                bn, bd = U.mul(bn, bn), U.mul(bd, bd)
        return RationalFunction._from_ints(self.scale ** n, num, den, self.var)

    def diff(self) -> "RationalFunction":
        """Derivative with respect to the parameter."""
        n = U.sub(U.mul(U.deriv(self.num), self.den), U.mul(self.num, U.deriv(self.den)))
        return RationalFunction._from_ints(self.scale, n, U.mul(self.den, self.den), self.var)

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if other is NotImplemented:
            return NotImplemented
        return (self.var == other.var and self.scale == other.scale
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.var, self.scale, tuple(self.num), tuple(self.den)))

    def __str__(self):
        n, d = self.numerator, self.denominator
        if d == 1:
            return str(n)
        return f"({n})/({d})"

    def __repr__(self):
        return f"RationalFunction('{self}')"


def _dense(p, var: str) -> list:
    if isinstance(p, MultiPoly):
        return [Fraction(c) for c in p.to_dense(var)]
    if isinstance(p, (list, tuple)):
        return U.strip([Fraction(coerce(c)) for c in p])
    c = Fraction(coerce(p))
    return [c] if c else []


def _cancel(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    if len(a) == 1 or len(b) == 1:
        return a, b
    g = U.gcd_int(a, b)
    if len(g) == 1:
        return a, b
    return U.div_exact_int(a, g), U.div_exact_int(b, g)


def _eval_ast(node, var: str) -> RationalFunction:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) \
            and not isinstance(node.value, bool):
        return RationalFunction(node.value, 1, var)
    if isinstance(node, ast.Name):
        if node.id != var:
            raise ValueError(f"unexpected variable {node.id!r} (expected {var!r})")
        return RationalFunction.variable(var)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_ast(node.operand, var)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left, var)
        if isinstance(node.op, ast.Pow):
            right = _eval_ast(node.right, var)
            if not right.is_constant() or right.scale.denominator != 1:
                raise ValueError("exponent must be an integer literal")
            return left ** int(right.evaluate(0))
        right = _eval_ast(node.right, var)
        ops = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__",
               ast.Div: "__truediv__"}
        if type(node.op) in ops:
            return getattr(left, ops[type(node.op)])(right)
    raise ValueError(f"unsupported expression: {ast.dump(node)}")


# ------------------------------------------------------------- substitution

def substitute_rational(f: MultiPoly, bindings: Mapping[str, RationalFunction],
                        var: str = "t") -> MultiPoly:
    """Clear denominators of ``f`` evaluated on rational functions.

    With ``v = N_v / D_v`` (``D_v`` monic) the result is
    ``prod_v D_v**deg_v(f) * f(N_1/D_1, ...)``, a polynomial in ``var``.  It is
    identically zero iff ``f`` vanishes along the parametrisation, and the
    map is multiplicative: ``sub(f*g) == sub(f) * sub(g)``.
    """
    missing = [v for v in f.variables if v not in bindings]
    if missing:
        raise UnboundVariable(f"unbound variables: {missing}")
    if f.is_zero():
        return MultiPoly()
    nums, dens, degs = [], [], []
    for i, v in enumerate(f.variables):
        r = bindings[v]
        nums.append(r.numerator_q())
        dens.append(r.denominator_q())
        degs.append(max(e[i] for e in f.terms))
    npow = [_powers(n, d) for n, d in zip(nums, degs)]
    dpow = [_powers(d, k) for d, k in zip(dens, degs)]
    acc: list = []
    for e, c in f.terms.items():
        term = [Fraction(c)]
        for i, k in enumerate(e):
            term = U.mul(term, npow[i][k])
            if degs[i] - k:
                term = U.mul(term, dpow[i][degs[i] - k])
        acc = U.add(acc, term)
    return MultiPoly.from_dense(acc, var)


def evaluate_rational(f: MultiPoly, bindings: Mapping[str, RationalFunction],
                      var: str = "t") -> RationalFunction:
    """``f`` evaluated on rational functions, as a reduced rational function."""
    num = substitute_rational(f, bindings, var)
    den: list = [Fraction(1)]
    for v in f.variables:
        k = f.degree(v)
        if k:
            den = U.mul(den, _powers(bindings[v].denominator_q(), k)[k])
    return RationalFunction(num, den, var)


def _powers(p: list, k: int) -> list[list]:
    out = [[Fraction(1)]]
    for _ in range(k):
        out.append(U.mul(out[-1], p))
    return out
