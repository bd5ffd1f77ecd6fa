"""Curve/surface file format, the bundled named-curve corpus, and the
invariant sweep run by ``curvekit corpus-verify``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import CurveKitError, PreconditionViolation
from .poly import XYZ, MultiPoly, homogenize, parse

DATA = "data"


def bundled_dir() -> Path:
    return Path(str(resources.files("curvekit") / DATA))


def resolve_path(name: str) -> Path:
    """A file path, or the name of a bundled curve (extension optional)."""
    p = Path(name)
    if p.is_file():
        return p
    base = bundled_dir()
    for cand in (base / name, base / f"{name}.curve", base / f"{name}.surf"):
        if cand.is_file():
            return cand
    raise FileNotFoundError(f"no such curve file or bundled curve: {name}")


def parse_curve_text(text: str) -> MultiPoly:
    """Read the ``curve:`` / ``vars:`` format; affine input is homogenized with the last variable."""
    variables = XYZ
    body = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, val = line.partition(":")
        key = key.strip().lower()
        if key == "vars":
            variables = tuple(v.strip() for v in val.split(",") if v.strip())
        elif key == "curve":
            body = val.strip()
        else:
            raise PreconditionViolation(f"unrecognised line: {line}")
    if body is None:
        raise PreconditionViolation("no 'curve:' line")
    p = parse(body, variables)
    if p.is_zero():
        raise PreconditionViolation("the zero polynomial is not a curve")
    if not p.is_homogeneous():
        p = homogenize(p, variables[-1])
    return p


def load_curve(name: str) -> MultiPoly:
    return parse_curve_text(resolve_path(name).read_text())


def load_manifest(path: str | None = None) -> tuple[dict, Path]:
    if path is None:
        base = bundled_dir()
        man = base / "corpus.json"
    else:
        p = Path(path)
        man = p / "corpus.json" if p.is_dir() else p
        base = man.parent
    if not man.is_file():
        raise FileNotFoundError(f"no corpus manifest at {man}")
    data = json.loads(man.read_text())
    if not data.get("curves") and not data.get("complete_intersections") and not data.get("rational_space_curves"):
        raise PreconditionViolation("empty corpus")
    return data, base


# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    subject: str
    check: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{tag}  {self.subject:<20} {self.check}{tail}"


@dataclass
class CorpusReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def add(self, subject, check, ok, detail=""):
        self.results.append(CheckResult(subject, check, bool(ok), detail))

    def text(self) -> str:
        lines = [r.line() for r in self.results]
        n_fail = sum(not r.ok for r in self.results)
        lines.append(f"{len(self.results) - n_fail}/{len(self.results)} checks passed")
        return "\n".join(lines) + "\n"

    def as_dict(self):
        return {
            "checks": [r.__dict__ for r in self.results],
            "passed": sum(r.ok for r in self.results),
            "failed": sum(not r.ok for r in self.results),
        }


def _guard(report, subject, check, fn):
    try:
        ok, detail = fn()
    except CurveKitError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    report.add(subject, check, ok, detail)


def _verify_curve(entry, base, seed, report):
    from .local import classify_singularities
    from .plucker import PluckerChars, check_relations, dual_curve, flexes, hessian, plucker_solve
    from .series import canonical_series, genus, pencil_double_points
    from .cremona import resolve

    name = entry["name"]
    f = parse_curve_text((base / entry["file"]).read_text())
    n = f.degree()
    report.add(name, "degree", n == entry["degree"], f"{n}")
    sings = classify_singularities(f, seed)
    kinds = {}
    for s in sings:
        key = "cusp" if s.kind == "cusp" else s.kind
        kinds[key] = kinds.get(key, 0) + s.orbit_size
    report.add(name, "singularities", kinds == entry.get("singularities", {}), json.dumps(kinds, sort_keys=True))
    p_exp = entry.get("genus")
    g = None

    def chk_genus():
        nonlocal g
        g = genus(f, seed)
        return g.p == p_exp, f"p={g.p}"

    _guard(report, name, "genus", chk_genus)
    node_cusp = all(s.kind == "node" or s.is_simple_cusp for s in sings)
    H = hessian(f) if n >= 3 else None
    if H is not None and sings:
        report.add(name, "hessian through singular points",
                   all(not H.evaluate(s.point.field_coords()) for s in sings))
    if node_cusp:
        d = sum(s.orbit_size for s in sings if s.kind == "node")
        k = sum(s.orbit_size for s in sings if s.kind == "cusp")
        chars = plucker_solve(PluckerChars(n=n, d=d, kappa=k))
        report.add(name, "plucker relations", all(check_relations(chars).values()) and 3 * chars.nu - chars.rho == 3 * n - chars.kappa)
        if "class" in entry:
            report.add(name, "class", chars.nu == entry["class"], f"nu={chars.nu}")
        if "flexes" in entry:
            _guard(report, name, "flex locations",
                   lambda: ((c := flexes(f, seed).count()) == entry["flexes"] == chars.rho, f"{c}"))
        if n >= 2 and chars.nu <= 12:
            _guard(report, name, "dual degree = class", lambda: ((D := dual_curve(f, seed).degree()) == chars.nu, f"{D}"))
        if k == 0 and g is not None:
            report.add(name, "class = 2(n+p-1)", chars.nu == pencil_double_points(n, g.p))
    if g is not None and g.p >= 1:
        _guard(report, name, "canonical series",
               lambda: ((c := canonical_series(f, seed)).order == 2 * g.p - 2 and c.dimension == g.p - 1, c.label()))
    if any(not s.is_ordinary for s in sings):
        def chk_resolve():
            res = resolve(f, seed)
            law = all(
                st.after.degree() == 2 * st.before.degree() - sum(st.multiplicities_at_triangle) for st in res.steps
            )
            same = all(genus(st.after, seed, check_irreducible=False).p == p_exp for st in res.steps)
            final_ok = all(s.is_ordinary for s in classify_singularities(res.final, seed))
            return law and same and final_ok, f"{len(res.steps)} steps"

        _guard(report, name, "resolution keeps genus", chk_resolve)


def _verify_ci(entry, base, seed, report):
    from .series import genus
    from .space import castelnuovo_bound, ci_characters, project_ci

    name = entry["name"]
    f, g = (parse_curve_text((base / s).read_text()) for s in entry["surfaces"])
    chars = ci_characters(entry["mu"], entry["nu"])

    def chk():
        C = project_ci(f, g, tuple(entry["center"]))
        p = genus(C, seed).p
        ok = C.degree() == entry["projected_degree"] and p == chars.p
        return ok, f"degree {C.degree()}, p={p}"

    _guard(report, name, "projection genus = ci genus", chk)
    report.add(name, "castelnuovo bound", chars.p <= castelnuovo_bound(chars.n), f"{chars.p} <= {castelnuovo_bound(chars.n)}")


def _verify_rational(entry, seed, report):
    from .local import classify_singularities
    from .series import genus
    from .space import cayley_complete, CayleyChars, postulation, postulation_rank, project_parametrized

    name = entry["name"]
    vars_ = tuple(entry["vars"])
    forms = [parse(s, vars_) for s in entry["forms"]]
    n, p = entry["degree"], entry["genus"]

    def chk_proj():
        C = project_parametrized(forms, tuple(entry["center"]))
        d = cayley_complete(CayleyChars(n=n, p=p)).d
        nodes = sum(s.orbit_size for s in classify_singularities(C, seed) if s.kind == "node")
        return C.degree() == n and genus(C, seed).p == p and nodes == d, f"degree {C.degree()}, {nodes} nodes"

    _guard(report, name, "projection", chk_proj)
    ranks = [postulation_rank(forms, m) for m in range(1, 5)]
    report.add(name, "postulation", ranks == [postulation(n, p, m).value for m in range(1, 5)], str(ranks))


def corpus_verify(path: str | None = None, seed: int = 0) -> CorpusReport:
    data, base = load_manifest(path)
    report = CorpusReport()
    jobs = [(e, lambda e: _verify_curve(e, base, seed, report)) for e in data.get("curves", [])]
    jobs += [(e, lambda e: _verify_ci(e, base, seed, report)) for e in data.get("complete_intersections", [])]
    jobs += [(e, lambda e: _verify_rational(e, seed, report)) for e in data.get("rational_space_curves", [])]
    for entry, fn in jobs:
        try:
            fn(entry)
        except (CurveKitError, OSError, KeyError, TypeError, ValueError) as exc:
            # a broken entry is a named failure, not a crash of the whole run
            report.add(str(entry.get("name", "?")) if isinstance(entry, dict) else "?", "entry",
                       False, f"{type(exc).__name__}: {exc}")
    return report
