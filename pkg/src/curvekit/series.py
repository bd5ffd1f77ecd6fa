"""Linear series on plane curves: genus, adjoints, series cut by a linear
system, the canonical series, Riemann-Roch condition counts, double point
formulas and the projection test."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import _upoly as U
from ._upoly import Q
from .cremona import resolve
from .errors import (
    AllMembersContainCurve,
    GroupOffCurve,
    NoCanonical,
    PreconditionViolation,
    Reducible,
    UnsupportedSingularity,
)
from .linalg import rank
from .linsys import LinearCondition, LinearSystemReport, _split_rows, system_dimension
from .elim import _ycoeffs, project, projection_points, res_dense
from .local import classify_singularities, intersect, intersection_multiplicity, local_expansion
from .numberfield import NFElem
from .points import AlgebraicPoint, as_point
from .poly import MultiPoly, monomials, n_monomials

PROJECTION, NOT_PROJECTION = "Projection", "NotProjection"


@dataclass
class SeriesDescriptor:
    order: int
    dimension: int
    speciality_index: int | None = None
    complete: bool | None = None

    def label(self) -> str:
        return f"g^{self.dimension}_{self.order}"

    def as_dict(self):
        return {
            "order": self.order,
            "dimension": self.dimension,
            "speciality_index": self.speciality_index,
            "complete": self.complete,
            "label": self.label(),
        }


@dataclass
class GenusReport:
    m: int
    ordinary_contributions: list  # (alpha, count)
    p: int
    cusps: int = 0
    resolution_steps: int = 0
    model: MultiPoly | None = None  # curve the count was made on

    def as_dict(self):
        return {
            "m": self.m,
            "ordinary_contributions": [list(t) for t in self.ordinary_contributions],
            "cusps": self.cusps,
            "resolution_steps": self.resolution_steps,
            "p": self.p,
        }


def require_irreducible(f: MultiPoly):
    _, facs = f.to_sympy().factor_list()
    if len(facs) > 1 or facs[0][1] > 1:
        g = MultiPoly.from_sympy(facs[0][0], f.variables)
        raise Reducible(f"curve has the factor {g}", witness=g)


def _counts(sings):
    """(sorted (alpha, count) pairs, cusp count) for ordinary points and simple cusps, else None."""
    by_alpha, cusps = {}, 0
    for s in sings:
        if s.is_simple_cusp:
            cusps += s.orbit_size
        elif s.is_ordinary:
            by_alpha[s.multiplicity] = by_alpha.get(s.multiplicity, 0) + s.orbit_size
        else:
            return None
    return sorted(by_alpha.items()), cusps


def _formula(m: int, contribs, cusps: int) -> int:
    return (m - 1) * (m - 2) // 2 - sum(c * a * (a - 1) // 2 for a, c in contribs) - cusps


def genus(f: MultiPoly, seed: int = 0, check_irreducible: bool = True) -> GenusReport:
    if check_irreducible:
        require_irreducible(f)
    m = f.degree()
    sings = classify_singularities(f, seed)
    counted = _counts(sings)
    steps = 0
    model = f
    if counted is None:
        res = resolve(f, seed)
        steps = len(res.steps)
        model = res.final
        counted = _counts(classify_singularities(model, seed))
    contribs, cusps = counted
    p = _formula(model.degree(), contribs, cusps)
    if p < 0:
        raise Reducible("negative genus: the curve splits over an extension of Q", witness=p)
    return GenusReport(m, contribs, p, cusps, steps, model)


def adjoint_conditions(f: MultiPoly, seed: int = 0):
    out = []
    for s in classify_singularities(f, seed):
        if not (s.is_ordinary or s.is_simple_cusp):
            raise UnsupportedSingularity(f"adjoint conditions need ordinary singularities; {s.point} is {s.kind}")
        out.append(LinearCondition(s.point, s.multiplicity - 1))
    return out


def adjoint_system(f: MultiPoly, k: int, seed: int = 0) -> LinearSystemReport:
    """Degree-k curves through each alpha-fold point of f with multiplicity alpha - 1."""
    return system_dimension(k, adjoint_conditions(f, seed))


# ---------------------------------------------------------------------------


def _members_containing(f: MultiPoly, system: LinearSystemReport) -> int:
    """dim of span(basis) intersected with f * (forms of degree k - n)."""
    k, n = system.degree, f.degree()
    if k < n or not system.basis:
        return 0
    mons = monomials(k, 3)
    V = [[b.coeff(e) for e in mons] for b in system.basis]
    W = [[(f * MultiPoly(f.variables, {e: Q(1)})).coeff(t) for t in mons] for e in monomials(k - n, 3)]
    rv, rw = rank(V, len(mons)), rank(W, len(mons))
    return rv + rw - rank(V + W, len(mons))


def _random_member(system, rng):
    acc = MultiPoly(("x", "y", "z"))
    for b in system.basis:
        acc = acc + b * rng.randint(-20, 20)
    return acc


def _evaluates_zero(G: MultiPoly, P) -> bool:
    return not G.evaluate(as_point(P).field_coords())


def cut_series(f: MultiPoly, system: LinearSystemReport, seed: int = 0, p: int | None = None) -> SeriesDescriptor:
    """The series cut on f by the moving part of a linear system."""
    if system.effective_dim < 0:
        raise PreconditionViolation("empty linear system")
    s = _members_containing(f, system)
    r = system.effective_dim - s
    if r < 0:
        raise AllMembersContainCurve("every member of the system contains the curve")
    n, k = f.degree(), system.degree
    if k == 0:
        return SeriesDescriptor(0, r)
    rng = random.Random(seed)
    for _ in range(10):
        G1, G2 = _random_member(system, rng), _random_member(system, rng)
        if G1.is_zero() or G2.is_zero() or f.divides(G1) or f.divides(G2):
            continue
        break
    else:
        raise PreconditionViolation("could not draw members off the curve")
    base = base_points(f, G1, G2, seed)
    fixed = sum(m * P.degree for P, m in base.items())
    desc = SeriesDescriptor(n * k - fixed, r)
    if p is not None:
        _add_speciality(f, desc, G1, base, p, seed)
    return desc


def base_points(f: MultiPoly, G1: MultiPoly, G2: MultiPoly, seed: int = 0) -> dict:
    """Points of f common to G1 and G2, with min(I(f, G1), I(f, G2)) at each."""
    rng = random.Random(seed)

    def filt(sh):
        return res_dense(_ycoeffs(sh.apply(f)), _ycoeffs(sh.apply(G2)))

    proj = project(f, G1, rng, filters=(filt,))
    out = {}
    for P, m1 in projection_points(proj):
        if not _evaluates_zero(G2, P):
            continue
        m2 = intersection_multiplicity(f, G2, P, seed)
        out[P] = min(m1, m2)
    return out


def _moving_group(f, G1, base, seed):
    group = []
    for rec in intersect(f, G1, seed):
        m = rec.local_multiplicity - next((v for q, v in base.items() if q == rec.point), 0)
        if m > 0:
            group.append((rec.point, m))
    return group


def _same_orbit(p, q) -> bool:
    a, b = p.numeric(30), q.numeric(30)
    return all(any(max(abs(x - y) for x, y in zip(u, w)) < 1e-20 for w in b) for u in a)


def _add_speciality(f, desc, G1, base, p, seed):
    """Speciality index of a generic group of the series, and completeness by Riemann-Roch."""
    if p == 0 or desc.order > 2 * p - 2:
        desc.speciality_index = 0  # degree above 2p - 2 is never special
    else:
        try:
            cond = riemann_roch_conditions(f, _moving_group(f, G1, base, seed), seed)
        except (PreconditionViolation, UnsupportedSingularity):
            return
        desc.speciality_index = p - cond
    desc.complete = desc.dimension == desc.order - p + desc.speciality_index


def canonical_series(f: MultiPoly, seed: int = 0) -> SeriesDescriptor:
    """Series cut by adjoints of degree m - 3 (on an ordinary model); always g^(p-1)_(2p-2)."""
    rep = genus(f, seed)
    if rep.p == 0:
        raise NoCanonical("a rational curve has no canonical series")
    model = rep.model
    m = model.degree()
    system = adjoint_system(model, m - 3, seed)
    if rep.p == 1:
        desc = SeriesDescriptor(0, system.effective_dim)
    else:
        desc = cut_series(model, system, seed)
    eps = (desc.order - (2 * rep.p - 2), desc.dimension - (rep.p - 1))
    assert eps == (0, 0), f"canonical series {desc.label()} for genus {rep.p}"
    desc.speciality_index = 1
    desc.complete = True
    return desc


def series_formulas(m: int, p: int, i: int):
    """(n_i, r_i) for the series cut by adjoints of degree m - 3 + i."""
    if i < 3:
        raise PreconditionViolation("formulas hold for i >= 3")
    return 2 * p - 2 + m * i, p - 2 + m * i


# ---------------------------------------------------------------------------
# Riemann-Roch


def _truncate(a, n):
    return U.trim(list(a[:n]))


def _series_mul(a, b, n, zero):
    out = [zero] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j, y in enumerate(b[: n - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _compose_local(F: MultiPoly, phi, n, zero, swap=False):
    """F(u, phi(u)) (or F(phi(v), v)) truncated to n terms."""
    one = zero + 1
    powers = [[one] + [zero] * (n - 1)]
    out = [zero] * n
    for e, c in F.terms.items():
        a, b = (e[1], e[0]) if swap else (e[0], e[1])
        if a >= n:
            continue
        while len(powers) <= b:
            powers.append(_series_mul(powers[-1], phi, n, zero))
        pb = powers[b]
        for j in range(n - a):
            if pb[j]:
                out[a + j] = out[a + j] + c * pb[j]
    return out


def branch_parametrization(f: MultiPoly, P, n: int):
    """Local parametrisation at a smooth point: (swap, phi) with v = phi(u) (or u = phi(v))."""
    F = local_expansion(f, P)
    coords = as_point(P).field_coords()
    zero = next((c * 0 for c in coords if isinstance(c, NFElem)), Q(0))
    fu = F.coeff((1, 0)) if F.terms else 0
    fv = F.coeff((0, 1)) if F.terms else 0
    if not fu and not fv:
        raise PreconditionViolation(f"{P} is a singular point")
    swap = not fv
    lin, piv = (fv, fu) if swap else (fu, fv)
    phi = [zero] * n
    for _ in range(n):
        # F(u, phi) = piv*phi + lin*u + higher, so this gains one order per pass
        val = _compose_local(F, phi, n, zero, swap)
        phi = [p_ - val_ / piv for p_, val_ in zip(phi, val)]
    return swap, phi


def riemann_roch_conditions(f: MultiPoly, group, seed: int = 0, degree: int | None = None) -> int:
    """Independent conditions a group of smooth points imposes on the adjoints of degree m - 3."""
    pts = []
    for g in group:
        if isinstance(g, tuple) and len(g) == 2 and isinstance(g[1], int):
            pts.append((as_point(g[0]), g[1]))
        else:
            pts.append((as_point(g), 1))
    for P, _ in pts:
        if f.evaluate(P.field_coords()):
            raise GroupOffCurve(f"{P} is not on the curve", witness=P)
    system = adjoint_system(f, f.degree() - 3 if degree is None else degree, seed)
    if system.effective_dim < 0:
        return 0
    rows = []
    for P, mult in pts:
        swap, phi = branch_parametrization(f, P, mult)
        zero = phi[0] * 0 if phi else Q(0)
        for j in range(mult):
            row = []
            for B in system.basis:
                loc = local_expansion(B, P)
                row.append(_compose_local(loc, phi, mult, zero, swap)[j])
            if isinstance(P, AlgebraicPoint):
                rows.extend(_split_rows(row, P.degree))
            else:
                rows.append([Q(v) for v in row])
    return rank(rows, len(system.basis)) if rows else 0


# ---------------------------------------------------------------------------


def pencil_double_points(n: int, p: int) -> int:
    if n < 1 or p < 0:
        raise PreconditionViolation("need n >= 1 and p >= 0")
    return 2 * (n + p - 1)


def series_multiple_points(r: int, n: int, p: int) -> int:
    if r < 1 or n < 1 or p < 0:
        raise PreconditionViolation("need r >= 1, n >= 1, p >= 0")
    return (r + 1) * (n + r * p - r)


@dataclass
class ProjectionVerdict:
    verdict: str
    n: int
    p: int
    virtual_dim: int | None = None
    effective_dim: int | None = None

    def as_dict(self):
        return dict(self.__dict__)


def projection_completeness_test(f: MultiPoly, seed: int = 0) -> ProjectionVerdict:
    """Whether f is the projection of a curve of the same order in a higher space."""
    rep = genus(f, seed)
    n, p = f.degree(), rep.p
    if n - p > 2:
        return ProjectionVerdict(PROJECTION, n, p)
    sys_ = adjoint_system(f, n - 4, seed) if n >= 4 else None
    if sys_ is None:
        return ProjectionVerdict(NOT_PROJECTION, n, p)
    dependent = sys_.effective_dim > sys_.virtual_dim
    return ProjectionVerdict(PROJECTION if dependent else NOT_PROJECTION, n, p, sys_.virtual_dim, sys_.effective_dim)
