"""Command-line interface: ``curvekit <command> ...``.

Exit codes: 0 success, 1 domain error (the error class is named in the
report), 2 usage error.  All randomness comes from ``--seed`` (default 0).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import mpmath

from . import corpus
from .errors import CurveKitError, PolySyntaxError
from .points import AlgebraicPoint, ProjPoint, format_numeric
from .poly import MultiPoly

DEFAULT_SEED = 0
DEFAULT_PRECISION = 53


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# JSON-safe conversion


class _Ctx:
    digits = 15


def _num(z) -> str:
    return format_numeric(mpmath.mpc(z), _Ctx.digits)


def clean(v):
    """Exact values as ints/strings, numerics as decimal strings."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return _num(v)
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return _num(v)
    if hasattr(v, "as_dict"):
        return clean(v.as_dict())
    if isinstance(v, dict):
        return {str(k): clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [clean(x) for x in v]
    if isinstance(v, (MultiPoly, ProjPoint, AlgebraicPoint)):
        return str(v)
    if type(v).__name__ == "mpq":
        return str(v.numerator) if v.denominator == 1 else str(v)
    return str(v)


def rootset_dict(rs):
    return {
        "exact_rational_roots": [[str(r), m] for r, m in rs.exact_rational_roots],
        "nonrational_count_by_multiplicity": {str(k): c for k, c in sorted(rs.nonrational_count_by_multiplicity.items())},
        "numeric_locations": [
            {"value": _num(z), "error_bound": mpmath.nstr(r, 3) if r else "0", "multiplicity": m}
            for z, r, m in rs.numeric_locations
        ],
        "at_infinity": rs.at_infinity,
        "total": rs.total(),
    }


def _point_dict(P):
    d = {"point": str(P), "orbit_size": P.degree}
    if isinstance(P, AlgebraicPoint):
        d["numeric"] = [[_num(c) for c in pt] for pt in P.numeric(_Ctx.digits + 5)]
    return d


# ---------------------------------------------------------------------------
# inputs


def _curve(name: str) -> MultiPoly:
    try:
        return corpus.load_curve(name)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from exc


def _point(text: str):
    try:
        return ProjPoint(*[int(t) for t in text.replace(":", ",").split(",")])
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: expected integers like 1,0,-1") from exc


def _points_file(path: str):
    """JSON list of points; each is [x, y, z] or {"point": [...], "multiplicity": m}."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read points from {path}: {exc}") from exc
    out = []
    for item in data:
        if isinstance(item, dict):
            out.append((ProjPoint(*item["point"]), int(item.get("multiplicity", 1))))
        else:
            out.append((ProjPoint(*item), 1))
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(a):
    from .local import classify_singularities
    from .plucker import curve_class, flex_count
    from .series import genus

    f = _curve(a.curve)
    sings = classify_singularities(f, a.seed)
    out = {"curve": str(f), "degree": f.degree(), "smooth": not sings, "singularities": [s.as_dict(_Ctx.digits) for s in sings]}
    out["genus"] = genus(f, a.seed).p
    if all(s.kind == "node" or s.is_simple_cusp for s in sings) and f.degree() >= 2:
        out["class"] = curve_class(f, a.seed)
        out["flexes"] = flex_count(f, a.seed)
    else:
        out["class"] = out["flexes"] = None
        out["note"] = "class and flex counts need nodes and simple cusps only"
    return out


def cmd_intersect(a):
    from .local import intersect

    f, g = _curve(a.f), _curve(a.g)
    recs = intersect(f, g, a.seed)
    total = sum(r.total for r in recs)
    return {"points": [r.as_dict(_Ctx.digits) for r in recs], "total": total, "bezout": f.degree() * g.degree()}


def cmd_resultant(a):
    from .elim import resultant

    r = resultant(_curve(a.f), _curve(a.g), a.var)
    return {"variable": a.var, "resultant": str(r)}


def cmd_discriminant(a):
    from .elim import discriminant_univariate, pencil_singular_members

    f = _curve(a.f)
    if a.g:
        coeffs, rs = pencil_singular_members(f, _curve(a.g), a.seed)
        return {"pencil_discriminant": [str(c) for c in coeffs], "roots": rootset_dict(rs)}
    d = discriminant_univariate(f, a.var)
    return {"variable": a.var, "discriminant": str(d)}


def cmd_class(a):
    from .plucker import curve_class

    return {"class": curve_class(_curve(a.curve), a.seed)}


def cmd_hessian(a):
    from .plucker import hessian

    H = hessian(_curve(a.curve))
    return {"hessian": str(H), "degree": H.degree() if not H.is_zero() else None}


def cmd_flexes(a):
    from .plucker import flexes

    rep = flexes(_curve(a.curve), a.seed)
    return {
        "flexes": [
            dict(_point_dict(fl.point), contact=fl.contact, hessian_multiplicity=fl.hessian_multiplicity) for fl in rep.flexes
        ],
        "singular_contributions": [{"point": str(s.point), "kind": s.kind, "intersection": m} for s, m in rep.singular_contributions],
        "count": rep.count(),
    }


def cmd_dual(a):
    from .plucker import dual_curve

    D = dual_curve(_curve(a.curve), a.seed)
    return {"dual": str(D), "degree": D.degree()}


def cmd_plucker(a):
    from .plucker import PluckerChars, check_relations, plucker_solve

    known = PluckerChars(n=a.n, nu=a.nu, d=a.d, kappa=a.k, delta=a.delta, rho=a.rho, p=a.p)
    c = plucker_solve(known)
    out = c.as_dict()
    out["relations"] = check_relations(c)
    return out


def cmd_cubic_flexes(a):
    from .plucker import cubic_flex_pencil

    dps = max(60, _Ctx.digits + 20)
    r = cubic_flex_pencil(_curve(a.curve), a.seed, dps=dps)
    return {
        "discriminant": [str(c) for c in r.discriminant],
        "quartic": [str(c) for c in r.quartic],
        "cube_identity": r.cube_identity,
        "triangles": [
            {
                "parameter": clean(t.parameter),
                "exact_lines": None if t.exact_lines is None else [str(ln) for ln in t.exact_lines],
                "numeric_lines": [[_num(c) for c in ln] for ln in t.numeric_lines],
            }
            for t in r.triangles
        ],
        "flexes": [[_num(c) for c in pt] for pt in r.flexes],
        "incidences": list(r.incidences),
        "max_residual": mpmath.nstr(r.max_residual, 3),
        "rational_checks": clean(r.rational_checks),
    }


def cmd_cremona(a):
    from .cremona import QuadraticFrame, std_quadratic_transform

    frame = QuadraticFrame.from_points(*[_point(t) for t in a.triangle]) if a.triangle else QuadraticFrame.standard()
    return std_quadratic_transform(_curve(a.curve), frame).as_dict()


def cmd_resolve(a):
    from .cremona import resolve
    from .series import genus

    res = resolve(_curve(a.curve), a.seed)
    out = res.as_dict()
    for step, d in zip(res.steps, out["steps"]):
        d["genus_before"] = genus(step.before, a.seed, check_irreducible=False).p
        d["genus_after"] = genus(step.after, a.seed, check_irreducible=False).p
    return out


def cmd_linsys(a):
    from .linsys import LinearCondition, system_dimension

    conds = [LinearCondition(p, m) for p, m in _points_file(a.through)] if a.through else []
    return system_dimension(a.degree, conds).as_dict()


def cmd_noether(a):
    from .linsys import noether_decompose

    return noether_decompose(_curve(a.f), _curve(a.phi), _curve(a.psi), a.seed).as_dict()


def cmd_ninth_point(a):
    from .linsys import ninth_base_point

    pts = [p for p, _ in _points_file(a.points)]
    return {"ninth_point": str(ninth_base_point(pts, a.seed))}


def cmd_genus(a):
    from .series import genus

    return genus(_curve(a.curve), a.seed).as_dict()


def cmd_adjoints(a):
    from .series import adjoint_system

    return adjoint_system(_curve(a.curve), a.degree, a.seed).as_dict()


def cmd_canonical(a):
    from .series import canonical_series

    return canonical_series(_curve(a.curve), a.seed).as_dict()


def cmd_rr(a):
    from .series import riemann_roch_conditions

    group = _points_file(a.points)
    n = riemann_roch_conditions(_curve(a.curve), group, a.seed, a.degree)
    return {"group_order": sum(m for _, m in group), "conditions": n}


def cmd_series_formulas(a):
    from .series import series_formulas

    n_i, r_i = series_formulas(a.m, a.p, a.i)
    return {"n_i": n_i, "r_i": r_i, "n_i_minus_r_i": n_i - r_i}


def cmd_projection_test(a):
    from .series import projection_completeness_test

    return projection_completeness_test(_curve(a.curve), a.seed).as_dict()


def cmd_space(a):
    from . import space

    sub = a.space_cmd
    if sub == "ci":
        return space.ci_characters(a.mu, a.nu).as_dict()
    if sub == "link":
        return space.linked_characters(space.LinkageInput(a.mu, a.nu, a.n1, a.p1, a.i)).as_dict()
    if sub == "project":
        C = space.project_ci(_curve(a.f), _curve(a.g), tuple(_point4(a.center)))
        return {"plane_curve": str(C), "degree": C.degree()}
    if sub == "postulation":
        ci = tuple(a.ci) if a.ci else None
        return space.postulation(a.n, a.p, a.m, ci).as_dict()
    if sub == "bound":
        return {"castelnuovo_bound": space.castelnuovo_bound(a.n)}
    if sub == "moduli":
        return {"moduli": space.moduli_count(a.n, a.p)}
    raise UsageError("missing space subcommand")


def _point4(text):
    try:
        vals = [int(t) for t in text.replace(":", ",").split(",")]
    except ValueError as exc:
        raise UsageError(f"bad center {text!r}") from exc
    if len(vals) != 4:
        raise UsageError("the center needs four coordinates")
    return vals


def cmd_corpus_verify(a):
    from .errors import PreconditionViolation

    if a.path is not None and not a.path.strip():
        raise UsageError("empty corpus path")
    try:
        rep = corpus.corpus_verify(a.path, a.seed)
    except (FileNotFoundError, PreconditionViolation, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc
    return rep


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def flags(defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global flags without defaults, so either position works
        q = argparse.ArgumentParser(add_help=False)
        d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        q.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
        q.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="seed for all random choices (default 0)")
        q.add_argument("--precision", type=int, default=d(DEFAULT_PRECISION), help="bits for numeric output (default 53)")
        return q

    common = flags(False)
    p = argparse.ArgumentParser(prog="curvekit", description="Invariants of plane and space algebraic curves.", parents=[flags(True)])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *curves, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for c in curves:
            sp.add_argument(c)
        sp.set_defaults(fn=fn)
        return sp

    add("analyze", cmd_analyze, "curve", help="degree, singularities, genus, class, flexes")
    add("intersect", cmd_intersect, "f", "g", help="intersection points with multiplicities")
    add("resultant", cmd_resultant, "f", "g").add_argument("--var", default="y")
    sp = add("discriminant", cmd_discriminant, "f", help="discriminant in --var, or of the pencil f + lam*g")
    sp.add_argument("g", nargs="?")
    sp.add_argument("--var", default="y")
    add("class", cmd_class, "curve")
    add("hessian", cmd_hessian, "curve")
    add("flexes", cmd_flexes, "curve")
    add("dual", cmd_dual, "curve")
    sp = add("plucker", cmd_plucker, help="complete Plucker characters from a subset")
    for flag, dest in (("--n", "n"), ("--nu", "nu"), ("--d", "d"), ("--k", "k"), ("--delta", "delta"), ("--rho", "rho"), ("--p", "p")):
        sp.add_argument(flag, dest=dest, type=int)
    add("cubic-flexes", cmd_cubic_flexes, "curve", help="the flex pencil of a smooth cubic")
    add("cremona", cmd_cremona, "curve").add_argument("--triangle", nargs=3, metavar="X,Y,Z")
    add("resolve", cmd_resolve, "curve")
    sp = add("linsys", cmd_linsys)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--through", help="JSON list of points")
    add("noether", cmd_noether, "f", "phi", "psi")
    add("ninth-point", cmd_ninth_point, "points")
    add("genus", cmd_genus, "curve")
    add("adjoints", cmd_adjoints, "curve").add_argument("--degree", type=int, required=True)
    add("canonical", cmd_canonical, "curve")
    sp = add("rr", cmd_rr, "curve")
    sp.add_argument("--points", required=True)
    sp.add_argument("--degree", type=int, help="adjoint degree (default m - 3)")
    sp = add("series-formulas", cmd_series_formulas)
    for flag in ("--m", "--p", "--i"):
        sp.add_argument(flag, type=int, required=True)
    add("projection-test", cmd_projection_test, "curve")

    sp = add("space", cmd_space, help="space-curve characters")
    ss = sp.add_subparsers(dest="space_cmd", required=True)

    def sadd(name):
        q = ss.add_parser(name, parents=[common])
        q.set_defaults(fn=cmd_space)
        return q

    q = sadd("ci")
    q.add_argument("--mu", type=int, required=True)
    q.add_argument("--nu", type=int, required=True)
    q = sadd("link")
    for flag in ("--mu", "--nu", "--n1"):
        q.add_argument(flag, type=int, required=True)
    q.add_argument("--p1", type=int)
    q.add_argument("--i", type=int)
    q = sadd("project")
    q.add_argument("f")
    q.add_argument("g")
    q.add_argument("--center", required=True, metavar="A,B,C,D")
    q = sadd("postulation")
    for flag in ("--n", "--p", "--m"):
        q.add_argument(flag, type=int, required=True)
    q.add_argument("--ci", type=int, nargs=2, metavar=("MU", "NU"))
    sadd("bound").add_argument("--n", type=int, required=True)
    q = sadd("moduli")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int, required=True)

    sp = add("corpus-verify", cmd_corpus_verify, help="run the invariant suite over a curve corpus")
    sp.add_argument("path", nargs="?", help="corpus directory or manifest (default: bundled)")
    return p


def _text(v, indent=0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(v, dict):
        for k in sorted(v):
            x = v[k]
            if isinstance(x, dict) and x or isinstance(x, list) and any(isinstance(y, (dict, list)) for y in x):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(x, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(x)}")
    elif isinstance(v, list):
        for x in v:
            if isinstance(x, dict):
                sub = _text(x, indent + 1)
                lines.append(f"{pad}- " + sub[0].lstrip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(x)}")
    else:
        lines.append(pad + _scalar(v))
    return lines


def _scalar(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, list):
        return "[" + ", ".join(_scalar(y) for y in x) + "]"
    if isinstance(x, dict):
        return "{}"
    return str(x)


def _emit(args, argv, status, body, out) -> None:
    if args.json:
        report = {
            "command": list(argv),
            "seed": args.seed,
            "precision": args.precision,
            "status": status,
        }
        report["result" if status == "ok" else "error"] = body
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    elif status == "ok":
        out.write("\n".join(_text(body)) + "\n")
    else:
        out.write(f"error: {body['type']}: {body['message']}\n")


def run(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.precision < 2:
        parser.print_usage(sys.stderr)
        sys.stderr.write("curvekit: error: --precision must be at least 2 bits\n")
        return 2
    _Ctx.digits = max(1, int(args.precision * math.log10(2)))
    try:
        result = args.fn(args)
    except UsageError as exc:
        sys.stderr.write(f"curvekit: error: {exc}\n")
        return 2
    except PolySyntaxError as exc:
        sys.stderr.write(f"curvekit: error: cannot parse polynomial: {exc}\n")
        return 2
    except CurveKitError as exc:
        _emit(args, argv, "error", {"type": type(exc).__name__, "message": str(exc)}, out)
        return 1
    if args.fn is cmd_corpus_verify:
        if args.json:
            _emit(args, argv, "ok", result.as_dict(), out)
        else:
            out.write(result.text())
        return 0 if result.ok else 1
    _emit(args, argv, "ok", clean(result), out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
