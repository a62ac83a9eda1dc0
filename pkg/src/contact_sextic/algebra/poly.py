"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` stores an ordered tuple of variable names and a map
from exponent vectors to coefficients.  Coefficients are Python ``int`` when
integral and :class:`fractions.Fraction` otherwise; both compare and hash
consistently, and integer arithmetic is much faster than ``Fraction``.

Canonical form: no zero coefficients, only variables that actually occur,
variables sorted by the global order ``t < x < y < z < (everything else,
alphabetically)``.  Two polynomials are equal iff their canonical forms are.

The text form produced by ``str`` is canonical (graded order, explicit
exponents, coefficients as ``p/q``) and is accepted by :meth:`MultiPoly.parse`,
which also reads ordinary infix expressions such as ``"y^2 + x*(x-1)^3"``.
"""

from __future__ import annotations

import ast
import heapq
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from ..errors import InexactDivision, UnboundVariable

Coeff = Union[int, Fraction]
Exponent = tuple[int, ...]

_FIXED_ORDER = {"t": 0, "x": 1, "y": 2, "z": 3}


def var_key(name: str) -> tuple[int, str]:
    return (_FIXED_ORDER.get(name, len(_FIXED_ORDER)), name)


def coerce(c) -> Coeff:
    """Normalise a scalar to ``int`` or a non-integral ``Fraction``."""
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return coerce(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return coerce(Fraction(c))
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


def qdiv(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return coerce(Fraction(a) / b)


class MultiPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None,
                 variables: Iterable[str] = ()):
        variables = tuple(variables)
        clean: dict[Exponent, Coeff] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(variables):
                raise ValueError("exponent length does not match variables")
            c = coerce(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._set(*_canonical(variables, clean))

    def _set(self, variables, terms):
        self.variables = variables
        self.terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, Coeff]) -> "MultiPoly":
        """Build from already clean terms; only variable canonicalisation runs."""
        obj = cls.__new__(cls)
        obj._set(*_canonical(variables, terms))
        return obj

    # -------------------------------------------------------------- builders
    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = coerce(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls._raw((name,), {(1,): 1})

    @classmethod
    def from_dense(cls, coeffs: Iterable, var: str) -> "MultiPoly":
        """Univariate polynomial from coefficients, lowest degree first."""
        return cls({(i,): c for i, c in enumerate(coeffs) if c}, (var,))

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return _eval_ast(tree.body)

    # ------------------------------------------------------------ inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.variables

    def constant_value(self) -> Coeff:
        if self.variables:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), 0)

    def degree(self, var: str) -> int:
        """Degree in ``var``; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficients(self, var: str) -> list["MultiPoly"]:
        """Coefficients in ``var``, lowest power first."""
        if not self.terms:
            return []
        if var not in self.variables:
            return [self]
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1:]
        buckets: list[dict[Exponent, Coeff]] = [{} for _ in range(self.degree(var) + 1)]
        for e, c in self.terms.items():
            buckets[e[i]][e[:i] + e[i + 1:]] = c
        return [MultiPoly._raw(rest, b) for b in buckets]

    def leading_coefficient(self, var: str) -> "MultiPoly":
        cs = self.coefficients(var)
        return cs[-1] if cs else MultiPoly()

    def to_dense(self, var: str) -> list[Coeff]:
        """Coefficient list in ``var`` for a polynomial in that variable only."""
        if any(v != var for v in self.variables):
            raise ValueError(f"{self} is not univariate in {var}")
        if not self.terms:
            return []
        out: list[Coeff] = [0] * (self.degree(var) + 1)
        for e, c in self.terms.items():
            out[e[0] if e else 0] = c
        return out

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        vs, a, b = _align(self, other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        vs, a, b = _align(self, other)
        return MultiPoly._raw(vs, _mul_terms(a, b))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a nonzero scalar only; see :meth:`exact_div` for polynomials."""
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_value()
        other = coerce(other)
        if other == 0:
            raise ZeroDivisionError("division by zero scalar")
        return MultiPoly._raw(self.variables,
                              {e: qdiv(c, other) for e, c in self.terms.items()})

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient ``self / other``; raises :class:`InexactDivision` on a remainder."""
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        vs, a, b = _align(self, other)
        return MultiPoly._raw(vs, _exact_div_terms(a, b))

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
        except InexactDivision:
            return False
        return True

    # -------------------------------------------------------------- calculus
    def diff(self, var: str) -> "MultiPoly":
        if var not in self.variables:
            return MultiPoly()
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MultiPoly._raw(self.variables, out)

    # ---------------------------------------------------------- substitution
    def subs(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Substitute polynomials (or scalars) for some of the variables."""
        repl = {v: _as_poly(p) for v, p in mapping.items() if v in self.variables}
        if not repl:
            return self
        keep = [i for i, v in enumerate(self.variables) if v not in repl]
        keep_vars = tuple(self.variables[i] for i in keep)
        powers: dict[str, list[MultiPoly]] = {v: [MultiPoly.const(1)] for v in repl}
        result = MultiPoly()
        for e, c in self.terms.items():
            term = MultiPoly._raw(keep_vars, {tuple(e[i] for i in keep): c})
            for i, v in enumerate(self.variables):
                if v in repl and e[i]:
                    pw = powers[v]
                    while len(pw) <= e[i]:
                        pw.append(pw[-1] * repl[v])
                    term = term * pw[e[i]]
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, object]):
        """Numeric value with every variable bound (any ring of scalars)."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise UnboundVariable(f"unbound variables: {missing}")
        xs = [values[v] for v in self.variables]
        acc = 0
        for e, c in self.terms.items():
            term = c
            for xv, k in zip(xs, e):
                if k:
                    term = term * xv ** k
            acc = acc + term
        return acc

    def homogenize(self, var: str = "w") -> "MultiPoly":
        d = self.total_degree()
        if var in self.variables:
            raise ValueError(f"{var} already occurs")
        vs = self.variables + (var,)
        return MultiPoly({e + (d - sum(e),): c for e, c in self.terms.items()}, vs)

    # -------------------------------------------------------- dunder plumbing
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        try:
            other = coerce(other)
        except TypeError:
            return NotImplemented
        return self == MultiPoly.const(other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, Coeff]]:
        return sorted(self.terms.items(), key=lambda it: (-sum(it[0]), tuple(-k for k in it[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MultiPoly('{self}')"


# ------------------------------------------------------------------ helpers

def _canonical(variables: tuple[str, ...], terms: dict[Exponent, Coeff]):
    if not terms:
        return (), {}
    n = len(variables)
    used = [i for i in range(n) if any(e[i] for e in terms)]
    order = sorted(used, key=lambda i: var_key(variables[i]))
    if len(order) == n and order == list(range(n)):
        return variables, terms
    if len(set(variables[i] for i in order)) != len(order):
        raise ValueError("duplicate variable names")
    return (tuple(variables[i] for i in order),
            {tuple(e[i] for i in order): c for e, c in terms.items()})


def _align(a: MultiPoly, b: MultiPoly):
    if a.variables == b.variables:
        return a.variables, a.terms, b.terms
    vs = tuple(sorted(set(a.variables) | set(b.variables), key=var_key))
    return vs, _remap(a, vs), _remap(b, vs)


def _remap(p: MultiPoly, vs: tuple[str, ...]) -> dict[Exponent, Coeff]:
    if p.variables == vs:
        return p.terms
    idx = [p.variables.index(v) if v in p.variables else -1 for v in vs]
    return {tuple(e[i] if i >= 0 else 0 for i in idx): c for e, c in p.terms.items()}


def _as_poly(x):
    if isinstance(x, MultiPoly):
        return x
    try:
        return MultiPoly.const(x)
    except TypeError:
        return NotImplemented


def _mul_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict[Exponent, Coeff] = {}
    bl = list(b.items())
    for ea, ca in a.items():
        for eb, cb in bl:
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _exact_div_terms(a: dict, b: dict) -> dict:
    """Multivariate exact division under lex order on exponent tuples."""
    if not a:
        return {}
    lm = max(b)
    lc = b[lm]
    rest = [(e, c) for e, c in b.items() if e != lm]
    rem = dict(a)
    heap = [tuple(-k for k in e) for e in rem]
    heapq.heapify(heap)
    queued = set(rem)
    quo: dict[Exponent, Coeff] = {}
    while heap:
        m = tuple(-k for k in heapq.heappop(heap))
        queued.discard(m)
        c = rem.pop(m, 0)
        if not c:
            continue
        qe = tuple([x - y for x, y in zip(m, lm)])
        if min(qe, default=0) < 0:
            raise InexactDivision("nonzero remainder")
        qc = qdiv(c, lc)
        quo[qe] = qc
        for e, cb in rest:
            ne = tuple([x + y for x, y in zip(qe, e)])
            nv = rem.get(ne, 0) - qc * cb
            if nv:
                rem[ne] = nv
                if ne not in queued:
                    queued.add(ne)
                    heapq.heappush(heap, tuple(-k for k in ne))
            else:
                rem.pop(ne, None)
    return quo


_BINOPS = {ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow}


def _eval_ast(node) -> MultiPoly:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"only integer literals are allowed, got {node.value!r}")
        return MultiPoly.const(node.value)
    if isinstance(node, ast.Name):
        return MultiPoly.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_ast(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        left = _eval_ast(node.left)
        if isinstance(node.op, ast.Pow):
            right = _eval_ast(node.right)
            if not right.is_constant() or not isinstance(right.constant_value(), int):
                raise ValueError("exponent must be an integer literal")
            return left ** right.constant_value()
        right = _eval_ast(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if not right.is_constant():
            raise ValueError("division only by constants")
        return left / right.constant_value()
    raise ValueError(f"unsupported expression: {ast.dump(node)}")


def symbols(names: str) -> tuple[MultiPoly, ...]:
    """``x, y = symbols("x y")``"""
    return tuple(MultiPoly.var(n) for n in names.split())
