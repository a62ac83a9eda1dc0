"""Command-line front end: ``contact-sextic <command> ...``.

Exit codes: 0 success, 1 a requested check failed, 2 usage error,
3 math-domain error (degenerate parameters, singular data, ...).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .algebra import MultiPoly, discriminant_wrt, poly_gcd, resultant
from .contact import (
    FLOW_GENERATORS,
    ContactFlowParams,
    PointTransformationParams,
    apply_contact_flow,
    apply_point_transformation,
    build_algebra_table,
    transform_implicit,
)
from .curves import (
    ImplicitCurve,
    Jet7,
    ParametricCurve,
    arithmetic_genus,
    cross_ratio,
    discriminant_is_cube,
    equianharmonic_distance,
    halphen_residual,
    implicit_incidence,
    implicit_jet,
    singular_points,
    verify_solution,
)
from .errors import ContactSexticError, InexactDivision, MathDomainError
from .families import FAMILIES, QPData, build_family, new_curve_polynomial, uv_pair
from .numeric.fitting import FitConfig, fit_parameters
from .numeric.ode import IntegratorConfig, integrate
from .numeric.roots import complex_roots, real_roots

log = logging.getLogger("contact_sextic")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


@dataclass
class CommandResult:
    exit_code: int
    payload: dict
    artifacts: list = field(default_factory=list)


class UsageError(Exception):
    pass


# ----------------------------------------------------------- parsing

def _scalar(text):
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except ValueError:
        raise UsageError(f"not a rational number: {text!r}") from None


def _param_value(text: str):
    text = text.strip()
    if text.startswith("["):
        return [_scalar(v) for v in json.loads(text)]
    try:
        return _scalar(text)
    except UsageError:
        return text  # polynomial text such as P=X*(X-1)^3


def parse_params(pairs: Sequence[str], blob: Optional[str] = None) -> dict:
    out: dict = {}
    if blob:
        try:
            data = json.loads(blob)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--params is not valid JSON: {exc}") from None
        for k, v in data.items():
            out[k] = [_scalar(x) for x in v] if isinstance(v, list) else (
                _param_value(str(v)) if isinstance(v, str) else _scalar(v))
    for item in pairs or ():
        if "=" not in item:
            raise UsageError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = _param_value(v)
    return out


def _num(v):
    """JSON form of a number: exact rationals as strings, floats as floats."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _curve_from_json(data: dict) -> dict:
    out = {}
    par = data.get("parametric")
    if par:
        out["parametric"] = ParametricCurve.parse(par["x"], par["y"])
    if data.get("implicit"):
        out["implicit"] = ImplicitCurve.parse(data["implicit"])
    if not out:
        raise UsageError("curve JSON needs a 'parametric' or 'implicit' entry")
    return out


def _curve_json(built: dict) -> dict:
    out = {}
    if "parametric" in built:
        out.update(built["parametric"].to_json())
    if "implicit" in built:
        out.update(built["implicit"].to_json())
    if "slope" in built:
        out["slope"] = str(built["slope"])
    return out


def _resolve_curve(args) -> tuple[str, dict]:
    if getattr(args, "curve", None):
        return args.curve, _curve_from_json(_load_json(args.curve))
    if not args.family:
        raise UsageError("give --family NAME or --curve PATH")
    try:
        return args.family, build_family(args.family, parse_params(args.param, args.params))
    except KeyError as exc:
        raise UsageError(str(exc).strip("\"'")) from None


# ---------------------------------------------------------- commands

def cmd_verify(args) -> CommandResult:
    name, built = _resolve_curve(args)
    payload: dict = {"family": name}
    ok = True
    if "parametric" in built:
        par = built["parametric"]
        if name == "conic":
            res = halphen_residual(par)
            payload["halphen_residual"] = str(res)
            ok = res.is_zero()
        else:
            good, res = verify_solution(par)
            payload["residual"] = str(res)
            ok = good
        if "implicit" in built:
            inc = implicit_incidence(built["implicit"], par)
            payload["incidence"] = str(inc)
            ok = ok and inc.is_zero()
    else:
        raise UsageError("verification needs a parametrised curve")
    payload["ok"] = ok
    return CommandResult(EXIT_OK if ok else EXIT_FAILED, payload)


def cmd_algebra(args) -> CommandResult:
    table = build_algebra_table()
    payload = table.to_json()
    ok = (table.dimension == 10 and table.jacobi_defect() == 0
          and table.killing_determinant() != 0)
    payload["ok"] = ok
    return CommandResult(EXIT_OK if ok else EXIT_FAILED, payload)


def cmd_transform(args) -> CommandResult:
    name, built = _resolve_curve(args)
    if "parametric" not in built:
        raise UsageError("transform needs a parametrised curve")
    par = built["parametric"]
    params = parse_params(args.with_param)
    payload: dict = {"source": name}
    if args.flow:
        if args.flow not in FLOW_GENERATORS:
            raise UsageError(f"--flow must be one of {', '.join(FLOW_GENERATORS)}")
        if "s" not in params:
            raise UsageError("contact flows need --with s=VALUE")
        image, z = apply_contact_flow(par, ContactFlowParams(args.flow, params["s"]))
        payload.update(image.to_json(), slope=str(z), flow=args.flow)
    else:
        p = PointTransformationParams(**{k: params[k] for k in params if k.startswith("c")})
        image = apply_point_transformation(par, p)
        payload.update(image.to_json())
        if "implicit" in built:
            payload.update(ImplicitCurve(transform_implicit(built["implicit"].f, p)).to_json())
    good, res = verify_solution(image)
    payload.update(residual=str(res), ok=good)
    return CommandResult(EXIT_OK if good else EXIT_FAILED, payload)


def cmd_resultant(args) -> CommandResult:
    Q = MultiPoly.parse(args.Q)
    P = MultiPoly.parse(args.P)
    b = MultiPoly.var("b") if args.b == "b" else _scalar(args.b)
    u, v = uv_pair(QPData(Q, P, b))
    res = resultant(u, v, "z")
    payload = {"u": str(u), "v": str(v), "terms": len(res.terms)}
    if args.show:
        payload["resultant"] = str(res)
    ok = True
    if args.check_new_curve:
        try:
            cofactor = res.exact_div(new_curve_polynomial(b))
        except InexactDivision:
            cofactor = None
        ok = cofactor is not None and not cofactor.is_zero()
        payload["divisible_by_new_curve"] = cofactor is not None
        if cofactor is not None:
            payload["cofactor_terms"] = len(cofactor.terms)
    payload["ok"] = ok
    return CommandResult(EXIT_OK if ok else EXIT_FAILED, payload)


def cmd_invariants(args) -> CommandResult:
    name, built = _resolve_curve(args)
    if "implicit" not in built:
        raise UsageError("invariants need an implicit curve")
    curve = built["implicit"]
    payload: dict = {"curve": str(curve.f), "degree": curve.degree}
    sing = singular_points(curve)
    payload["singular_points"] = [
        {"location": [_num(c) for c in s.location], "multiplicity": s.multiplicity,
         "exact": s.exact} for s in sing]
    if curve.f.degree("y") >= 1:
        disc = discriminant_wrt(curve.f, "y")
        payload["discriminant_y"] = str(disc)
    if curve.f.degree("y") == 3:
        quartic = discriminant_is_cube(curve)
        payload["discriminant_cube_root"] = None if quartic is None else str(quartic)
        if quartic is not None:
            roots = complex_roots(quartic)
            payload["quartic_roots"] = [_num(r) for r in roots]
            payload["real_roots"] = sum(abs(r.imag) < 1e-9 for r in roots)
            payload["cross_ratio"] = _num(cross_ratio(*roots))
            payload["equianharmonic_distance"] = equianharmonic_distance(roots)
    if args.deltas is not None:
        payload["arithmetic_genus"] = arithmetic_genus(curve.degree, args.deltas)
    return CommandResult(EXIT_OK, payload)


def _read_jet(path: str) -> Jet7:
    data = _load_json(path)
    try:
        return Jet7(float(_scalar(data["x0"])), tuple(float(_scalar(v))
                                                     for v in data["derivatives"]))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"jet JSON needs x0 and derivatives: {exc}") from None


def cmd_integrate(args) -> CommandResult:
    if args.jet:
        start = _read_jet(args.jet)
    else:
        name, built = _resolve_curve(args)
        if "implicit" not in built or args.y0 is None:
            raise UsageError("integrate needs --jet PATH or an implicit family with --x0 --y0")
        start = implicit_jet(built["implicit"], _scalar(args.x0), _scalar(args.y0)).as_floats()
    tol = args.tol or 1e-10
    cfg = IntegratorConfig(rtol=tol, atol=tol * 1e-2, max_steps=args.max_steps)
    tr = integrate(start, args.x_end, cfg)
    payload = {"status": tr.status, "steps": tr.steps, "rejected": tr.rejected,
               "x": float(tr.xs[-1]), "state": [float(v) for v in tr.states[-1]]}
    artifacts = []
    if args.out:
        Path(args.out).write_text(tr.to_csv())
        artifacts.append(args.out)
    return CommandResult(EXIT_OK, payload, artifacts)


def cmd_fit(args) -> CommandResult:
    data = _read_jet(args.data)
    guess = PointTransformationParams(*(float(v) for v in (args.guess or
                                                           [0, 0, 0, 1, 1, 0, 0])))
    cfg = FitConfig(initial_guess=guess, tol=args.tol or 1e-11,
                    max_iterations=args.max_iterations)
    res = fit_parameters(data, cfg)
    payload = res.to_json()
    ok = bool(res.residual < 1e-9)
    payload["ok"] = ok
    return CommandResult(EXIT_OK if ok else EXIT_FAILED, payload)


def cmd_family(args) -> CommandResult:
    if args.action == "list":
        return CommandResult(EXIT_OK, {"families": [
            {"name": f.name, "params": list(f.params), "description": f.description}
            for f in FAMILIES.values()]})
    if not args.name:
        raise UsageError(f"family {args.action} needs --name")
    try:
        built = build_family(args.name, parse_params(args.param, args.params))
    except KeyError as exc:
        raise UsageError(f"missing or unknown parameter: {exc}") from None
    if args.action == "build":
        return CommandResult(EXIT_OK, {"name": args.name, **_curve_json(built)})
    # jet: at parameter t on the parametrisation, exactly
    if "parametric" not in built or "implicit" not in built:
        raise UsageError(f"family {args.name} has no implicit form for jets")
    t = _scalar(args.t)
    x0, y0 = built["parametric"].point(t)
    jet = implicit_jet(built["implicit"], x0, y0)
    payload = {"x0": str(jet.x0), "derivatives": [str(v) for v in jet.derivatives],
               "float": [float(v) for v in jet.derivatives]}
    artifacts = []
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
        artifacts.append(args.out)
    return CommandResult(EXIT_OK, payload, artifacts)


def sample_curve(curve: ParametricCurve, t_min: float, t_max: float, n: int,
                 view: float) -> list[list[tuple[float, float]]]:
    """Polyline segments of the curve, split at real poles and outside ``|x|,|y| <= view``."""
    poles = []
    for den in (curve.x.denominator, curve.y.denominator):
        if den.total_degree() > 0:
            poles += [r.real for r in complex_roots(den) if abs(r.imag) < 1e-9]
    segments: list[list[tuple[float, float]]] = []
    cur: list[tuple[float, float]] = []
    prev = None
    for t in np.linspace(t_min, t_max, n):
        t = float(t)
        crossed = prev is not None and any(prev < p <= t for p in poles)
        prev = t
        inside = False
        if not any(abs(t - p) < 1e-12 for p in poles):
            x, y = curve.x.evaluate(t), curve.y.evaluate(t)
            inside = abs(x) <= view and abs(y) <= view
        if crossed or not inside:
            if len(cur) > 1:
                segments.append(cur)
            cur = []
        if inside:
            cur.append((float(x), float(y)))
    if len(cur) > 1:
        segments.append(cur)
    return segments


def cusp_points(curve: ParametricCurve) -> list[tuple[float, float]]:
    """Real points where ``x'(t)`` and ``y'(t)`` vanish together."""
    g = poly_gcd(curve.x.diff().numerator, curve.y.diff().numerator)
    if g.total_degree() < 1:
        return []
    out = []
    for t in real_roots(g):
        if all(abs(complex(d.evaluate({"t": t}))) > 1e-12
               for d in (curve.x.denominator, curve.y.denominator)):
            out.append((float(curve.x.evaluate(t)), float(curve.y.evaluate(t))))
    return out


def render_svg(segments, title: str, size: int = 480, marks=()) -> str:
    pts = [p for s in segments for p in s]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    span = max(x1 - x0, y1 - y0)

    def tr(p):
        return (size * (p[0] - x0) / span, size * (y1 - p[1]) / span)

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">', f"<title>{title}</title>",
             f'<rect width="{size}" height="{size}" fill="white"/>']
    if x0 < 0 < x1:
        ax = tr((0, 0))[0]
        lines.append(f'<line x1="{ax:.2f}" y1="0" x2="{ax:.2f}" y2="{size}" stroke="#bbb"/>')
    if y0 < 0 < y1:
        ay = tr((0, 0))[1]
        lines.append(f'<line x1="0" y1="{ay:.2f}" x2="{size}" y2="{ay:.2f}" stroke="#bbb"/>')
    for seg in segments:
        coords = " ".join("{:.2f},{:.2f}".format(*tr(p)) for p in seg)
        lines.append(f'<polyline fill="none" stroke="black" stroke-width="1.5" '
                     f'points="{coords}"/>')
    for m in marks:
        if x0 <= m[0] <= x1 and y0 <= m[1] <= y1:
            cx, cy = tr(m)
            lines.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="none" stroke="red"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_plot(args) -> CommandResult:
    name, built = _resolve_curve(args)
    if "parametric" not in built:
        raise UsageError("plot needs a parametrised curve")
    segments = sample_curve(built["parametric"], args.t_min, args.t_max, args.samples, args.view)
    if not segments:
        raise MathDomainError("no part of the curve lies inside the viewport")
    out = Path(args.out or f"{name}.svg")
    cusps = cusp_points(built["parametric"])
    title = f"{name} {' '.join(args.param or [])}".strip()
    out.write_text(render_svg(segments, title, marks=cusps))
    csv_path = out.with_suffix(".csv")
    rows = ["segment,x,y"] + [f"{i},{x!r},{y!r}" for i, s in enumerate(segments) for x, y in s]
    csv_path.write_text("\n".join(rows) + "\n")
    payload = {"segments": len(segments), "points": sum(len(s) for s in segments),
               "cusps": [list(c) for c in cusps]}
    return CommandResult(EXIT_OK, payload, [str(out), str(csv_path)])


# ------------------------------------------------------------ parser

def _add_curve_args(p):
    p.add_argument("--family", help="family name (see `family list`)")
    p.add_argument("--curve", help="curve JSON as printed by `family build`")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--params", help="family parameters as a JSON object")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float)
    common.add_argument("--out", help="output file")

    parser = argparse.ArgumentParser(prog="contact-sextic", parents=[common],
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="exact residual of a family member")
    _add_curve_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("algebra", parents=[common], help="structure of the symmetry algebra")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("transform", parents=[common],
                       help="apply a point transformation or contact flow")
    _add_curve_args(p)
    p.add_argument("--flow", help=f"contact flow generator ({', '.join(FLOW_GENERATORS)})")
    p.add_argument("--with", dest="with_param", action="append", default=[],
                   metavar="KEY=VALUE", help="c1..c7, or s for flows")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("resultant", parents=[common], help="eliminate z from the u, v pair")
    p.add_argument("--Q", default="0")
    p.add_argument("--P", default="X*(X-1)^3")
    p.add_argument("--b", default="b", help="rational value, or 'b' to keep it symbolic")
    p.add_argument("--check-new-curve", action="store_true")
    p.add_argument("--show", action="store_true", help="include the full resultant")
    p.set_defaults(func=cmd_resultant)

    p = sub.add_parser("invariants", parents=[common],
                       help="singular points, discriminant, cross-ratio")
    _add_curve_args(p)
    p.add_argument("--deltas", type=int, nargs="*", help="delta invariants for the genus")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("integrate", parents=[common], help="integrate from a 6-jet")
    _add_curve_args(p)
    p.add_argument("--jet", help="jet JSON as written by `family jet`")
    p.add_argument("--x0")
    p.add_argument("--y0")
    p.add_argument("--x-end", type=float, required=True)
    p.add_argument("--max-steps", type=int, default=100_000)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("fit", parents=[common], help="fit c1..c7 to a 6-jet")
    p.add_argument("--data", required=True)
    p.add_argument("--guess", type=float, nargs=7)
    p.add_argument("--max-iterations", type=int, default=25)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("family", parents=[common], help="list, build or sample families")
    p.add_argument("action", choices=["list", "build", "jet"])
    p.add_argument("--name")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--params", help="parameters as a JSON object")
    p.add_argument("--t", default="0", help="curve parameter for `jet`")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("plot", parents=[common], help="SVG and CSV of a real branch")
    _add_curve_args(p)
    p.add_argument("--t-min", type=float, default=-10.0)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--samples", type=int, default=4001)
    p.add_argument("--view", type=float, default=3.0, help="clip to |x|, |y| <= VIEW")
    p.set_defaults(func=cmd_plot)
    return parser


def _format_text(payload, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_format_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult(EXIT_OK if exc.code == 0 else EXIT_USAGE, {})
    random.seed(args.seed)
    np.random.seed(args.seed)
    try:
        return args.func(args)
    except UsageError as exc:
        return CommandResult(EXIT_USAGE, {"error": str(exc)})
    except (MathDomainError, ZeroDivisionError) as exc:
        return CommandResult(EXIT_DOMAIN, {"error": str(exc), "kind": type(exc).__name__})
    except ContactSexticError as exc:
        return CommandResult(EXIT_FAILED, {"error": str(exc), "kind": type(exc).__name__})
    except ValueError as exc:
        return CommandResult(EXIT_USAGE, {"error": str(exc)})


def main(argv: Optional[Sequence[str]] = None) -> int:
    level = os.environ.get("CONTACT_SEXTIC_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    argv = list(sys.argv[1:] if argv is None else argv)
    res = run(argv)
    if res.payload:
        if "--json" in argv:
            print(json.dumps(res.payload, indent=2, default=str))
        else:
            print(_format_text(res.payload))
    for path in res.artifacts:
        log.info("wrote %s", path)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
