"""Regenerate frozen.json from independent sympy computations.

Run from the repository root: ``python3 tests/oracles/generate.py``.
Nothing here imports the package under test.
"""

import json
from pathlib import Path

import mpmath
import sympy as sp

x, y, z, t, b, X = sp.symbols("x y z t b X")
ys = sp.symbols("y3:8")
F = (10 * ys[0] ** 3 * ys[4] - 70 * ys[0] ** 2 * ys[1] * ys[3] - 49 * ys[0] ** 2 * ys[2] ** 2
     + 280 * ys[0] * ys[1] ** 2 * ys[2] - 175 * ys[1] ** 4)
CANFORM = y ** 3 + 3 * (3 * x ** 4 - 6 * x ** 2 - 1) * y + 12 * x * (3 * x ** 4 + 1)
GENERATORS = [sp.Integer(1), x, x ** 2, y, z, x * z, x ** 2 * z - 2 * x * y, z ** 2,
              2 * y * z - x * z ** 2, 4 * x * y * z - 4 * y ** 2 - x ** 2 * z ** 2]


def terms(p, gens):
    poly = sp.Poly(sp.expand(p), *gens)
    return sorted([[list(m), str(c)] for m, c in poly.terms()])


def residual(xt, yt):
    xd = sp.diff(xt, t)
    d = [sp.cancel(sp.diff(yt, t) / xd)]
    for _ in range(6):
        d.append(sp.cancel(sp.diff(d[-1], t) / xd))
    return sp.factor(sp.cancel(F.subs(dict(zip(ys, d[2:7])))))


def field(H):
    Hx, Hy, Hz = (sp.diff(H, v) for v in (x, y, z))
    return (-Hz, H - z * Hz, Hx + z * Hy)


def bracket(H, G):
    fh, fg = field(H), field(G)
    comm = [sum(fh[j] * sp.diff(fg[i], v) - fg[j] * sp.diff(fh[i], v)
                for j, v in enumerate((x, y, z))) for i in range(3)]
    return sp.expand(comm[1] - z * comm[0])


def killing():
    basis = GENERATORS
    monos = sorted({m for g in basis for m in sp.Poly(g, x, y, z).monoms()})
    M = sp.Matrix([[sp.Poly(g, x, y, z).coeff_monomial(m) for g in basis] for m in monos])
    ad = []
    table = {}
    for i, gi in enumerate(basis):
        cols = []
        for j, gj in enumerate(basis):
            br = bracket(gi, gj)
            rhs = sp.Matrix([sp.Poly(br, x, y, z).coeff_monomial(m) for m in monos])
            sol = M.solve_least_squares(rhs) if br != 0 else sp.zeros(10, 1)
            assert M * sol == rhs
            cols.append(list(sol))
            table[f"{i + 1},{j + 1}"] = str(br)
        ad.append(sp.Matrix(cols).T)
    K = sp.Matrix(10, 10, lambda i, j: (ad[i] * ad[j]).trace())
    ev = K.eigenvals()
    pos = sum(m for e, m in ev.items() if sp.N(e) > 0)
    neg = sum(m for e, m in ev.items() if sp.N(e) < 0)
    return str(K.det()), [int(pos), int(neg), 10 - int(pos) - int(neg)], table


def implicit_jet_canform():
    yser = sum(sp.Symbol(f"a{k}") * x ** k for k in range(1, 9))
    eq = sp.expand(CANFORM.subs(y, yser))
    sol = {}
    for k in range(1, 9):
        ck = eq.coeff(x, k).subs(sol)
        a = sp.Symbol(f"a{k}")
        sol[a] = sp.solve(ck, a)[0]
    return [0] + [str(sp.factorial(k) * sol[sp.Symbol(f"a{k}")]) for k in range(1, 8)]


def main():
    out = {}
    seed_x, seed_y = 1 / (t ** 2 + 1), -t ** 3 / (t ** 2 + 1) ** 2
    out["seed_residual"] = str(residual(seed_x, seed_y))
    cx = t * (t ** 2 - 3) / (3 * (t ** 2 + 1))
    cy = -4 * t * (t ** 4 + 3) / (3 * (t ** 2 + 1) ** 2)
    out["canform_residual"] = str(residual(cx, cy))
    out["canform_incidence"] = str(sp.simplify(CANFORM.subs({x: cx, y: cy})))
    out["t_fourth_residual"] = str(residual(t, t ** 4))

    disc = sp.discriminant(CANFORM, y)
    out["canform_disc"] = terms(disc, [x])
    out["canform_disc_factor"] = str(sp.factor(disc))
    out["canform_jet"] = implicit_jet_canform()

    # general solution at one rational parameter tuple
    c = [sp.Rational(1, 3), sp.Rational(-1, 2), sp.Rational(1, 5), 2, sp.Rational(3, 2),
         sp.Rational(1, 7), sp.Rational(1, 4)]
    S, D = c[4] * x + c[5], 1 - c[6] * x
    W = c[3] * y + c[0] + c[1] * x + c[2] * x ** 2
    gen = sp.expand(D ** 6 * CANFORM.subs({x: S / D, y: W / D ** 2}, simultaneous=True))
    out["general_params"] = [str(v) for v in c]
    out["general_polynomial"] = terms(sp.cancel(gen), [x, y])

    # contact family: the printed slope against ydot/xdot
    bs = dict(b0=2, b1=sp.Rational(1, 3), b2=-1, b3=sp.Rational(1, 2), b4=3, b5=1,
              b6=sp.Rational(-1, 4))
    den = bs["b0"] + t ** 2
    xt = (bs["b5"] + bs["b6"] * t ** 2) / den
    yt = (bs["b4"] * t ** 4 + bs["b3"] * t ** 2 + bs["b2"] * t + bs["b1"]) / den ** 2
    printed = (((4 * bs["b4"] * bs["b0"] - 2 * bs["b3"]) * t ** 3 - 3 * bs["b2"] * t ** 2
                + (2 * bs["b3"] * bs["b0"] - 4 * bs["b1"]) * t + bs["b2"] * bs["b0"])
               / (2 * (bs["b5"] - bs["b0"] * bs["b6"]) * (bs["b0"] * t + t ** 3)))
    true = sp.cancel(sp.diff(yt, t) / sp.diff(xt, t))
    out["contact_params"] = {k: str(v) for k, v in bs.items()}
    out["contact_true_slope"] = str(true)
    out["contact_printed_plus_true"] = str(sp.cancel(printed + true))

    # resultant of the u, v pair at Q = 0, P = X (X - 1)^3, b = 1/2
    P = X * (X - 1) ** 3
    bv = sp.Rational(1, 2)
    Xs = x + 2 * bv * z
    u = (y + bv * z ** 2) ** 2 + P.subs(X, Xs)
    v = 4 * P.subs(X, Xs) * z ** 2 + sp.diff(P, X).subs(X, Xs) ** 2
    # deg_z u * deg_z v = 24 is even, so sympy's resultant() agrees in sign
    # with the Sylvester determinant here
    res = sp.resultant(sp.expand(u), sp.expand(v), z)
    out["resultant_half"] = terms(res, [x, y])
    nc = ((64 * b + 1024 * b ** 3) * y ** 3
          + ((768 * b ** 2 + 16) * x ** 2 - 768 * x * b ** 2 + 288 * b ** 2) * y ** 2
          + (264 * x ** 2 * b - 108 * b ** 3 + 192 * x ** 4 * b - 72 * x * b
             - 384 * x ** 3 * b) * y
          + (48 * x ** 4 - 27 * b ** 2 + 54 * x * b ** 2 - 16 * x ** 3
             - 27 * x ** 2 * b ** 2 - 48 * x ** 5 + 16 * x ** 6))
    q, r = sp.div(sp.Poly(res, x, y), sp.Poly(nc.subs(b, bv), x, y))
    assert r.is_zero
    out["resultant_half_cofactor_terms"] = len(q.terms())
    nd = sp.discriminant(nc.subs(b, bv), y)
    out["new_curve_half_disc_factor"] = str(sp.factor(nd))

    # roots and cross-ratios
    mpmath.mp.dps = 40
    quart = sp.Poly(-3 * x ** 4 - 6 * x ** 2 + 1, x)
    out["quartic_roots"] = [[float(sp.re(r)), float(sp.im(r))]
                            for r in sorted(quart.nroots(n=30), key=lambda r: (sp.re(r), sp.im(r)))]

    det, sig, table = killing()
    out["killing_determinant"] = det
    out["killing_signature"] = sig
    out["lagrange_brackets"] = table

    # explicit y7 at (y3, y4, y5, y6) = (1, 1, 0, 0)
    y7 = sp.solve(F.subs({ys[0]: 1, ys[1]: 1, ys[2]: 0, ys[3]: 0}), ys[4])[0]
    out["y7_example"] = str(y7)

    path = Path(__file__).with_name("frozen.json")
    path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
