"""Projective characters of plane curves: polars, class, Hessian, flexes,
the Plücker relations as a constraint system, the dual curve, and the
flex configuration of a smooth cubic."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, fields, replace

import mpmath

from . import _upoly as U
from ._implicit import image_curve
from ._upoly import Q
from .elim import certify_roots, factor_rational, pencil_singular_members
from .errors import (
    EliminationDegenerate,
    Inconsistent,
    NotSmoothCubic,
    PreconditionViolation,
    Underdetermined,
    UnsupportedSingularity,
    ZeroPolar,
)
from .local import (
    NODE,
    classify_singularities,
    hessian_form,
    intersect,
    tangent_contact,
)
from .points import ProjPoint, as_point
from .poly import MultiPoly

NODE_FLEX_ABSORPTION = 6
CUSP_FLEX_ABSORPTION = 8


@dataclass
class PluckerChars:
    n: int | None = None
    nu: int | None = None
    d: int | None = None
    kappa: int | None = None
    delta: int | None = None
    rho: int | None = None
    p: int | None = None

    def known(self):
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}

    def dual(self) -> "PluckerChars":
        return PluckerChars(self.nu, self.n, self.delta, self.rho, self.d, self.kappa, self.p)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _relations(c: PluckerChars):
    """(name, lhs-rhs) for each relation whose inputs are all known."""
    out = []
    n, nu, d, k, dl, r, p = c.n, c.nu, c.d, c.kappa, c.delta, c.rho, c.p
    if None not in (n, nu, d, k):
        out.append(("FP1: nu = n(n-1) - 2d - 3kappa", nu - (n * (n - 1) - 2 * d - 3 * k)))
    if None not in (n, nu, dl, r):
        out.append(("FP2: n = nu(nu-1) - 2delta - 3rho", n - (nu * (nu - 1) - 2 * dl - 3 * r)))
    if None not in (n, d, k, r):
        out.append(("FP3: rho = 3n(n-2) - 6d - 8kappa", r - (3 * n * (n - 2) - 6 * d - 8 * k)))
    if None not in (nu, dl, r, k):
        out.append(("FP4: kappa = 3nu(nu-2) - 6delta - 8rho", k - (3 * nu * (nu - 2) - 6 * dl - 8 * r)))
    if None not in (n, nu, k, r):
        out.append(("3nu - rho = 3n - kappa", (3 * nu - r) - (3 * n - k)))
    if None not in (n, d, k, p):
        out.append(("p = (n-1)(n-2)/2 - d - kappa", 2 * p - ((n - 1) * (n - 2) - 2 * d - 2 * k)))
    if None not in (nu, dl, r, p):
        out.append(("p = (nu-1)(nu-2)/2 - delta - rho", 2 * p - ((nu - 1) * (nu - 2) - 2 * dl - 2 * r)))
    return out


def _solve_linear(total, coef, name):
    """Solve coef * x = total in the integers."""
    if total % coef:
        raise Inconsistent(f"{name} has no integral solution")
    return total // coef


def plucker_solve(partial: PluckerChars) -> PluckerChars:
    """Complete a partial set of plane characters by propagating the Plücker relations."""
    c = replace(partial)
    changed = True
    while changed:
        changed = False
        n, nu, d, k, dl, r, p = c.n, c.nu, c.d, c.kappa, c.delta, c.rho, c.p
        # FP1 and genus (primal side)
        if n is not None:
            if nu is None and d is not None and k is not None:
                c.nu = n * (n - 1) - 2 * d - 3 * k
                changed = True
            elif d is None and nu is not None and k is not None:
                c.d = _solve_linear(n * (n - 1) - 3 * k - nu, 2, "FP1")
                changed = True
            elif k is None and nu is not None and d is not None:
                c.kappa = _solve_linear(n * (n - 1) - 2 * d - nu, 3, "FP1")
                changed = True
            if c.rho is None and c.d is not None and c.kappa is not None:
                c.rho = 3 * n * (n - 2) - 6 * c.d - 8 * c.kappa
                changed = True
            if c.p is None and c.d is not None and c.kappa is not None:
                c.p = (n - 1) * (n - 2) // 2 - c.d - c.kappa
                changed = True
            if c.d is None and c.kappa is not None and c.p is not None:
                c.d = (n - 1) * (n - 2) // 2 - c.p - c.kappa
                changed = True
            if c.kappa is None and c.d is not None and c.p is not None:
                c.kappa = (n - 1) * (n - 2) // 2 - c.p - c.d
                changed = True
            if c.kappa is None and c.d is not None and c.rho is not None:
                c.kappa = _solve_linear(3 * n * (n - 2) - 6 * c.d - c.rho, 8, "FP3")
                changed = True
            if c.d is None and c.kappa is not None and c.rho is not None:
                c.d = _solve_linear(3 * n * (n - 2) - 8 * c.kappa - c.rho, 6, "FP3")
                changed = True
        nu = c.nu
        if nu is not None:
            if c.n is None and c.delta is not None and c.rho is not None:
                c.n = nu * (nu - 1) - 2 * c.delta - 3 * c.rho
                changed = True
            if c.delta is None and c.n is not None and c.rho is not None:
                c.delta = _solve_linear(nu * (nu - 1) - 3 * c.rho - c.n, 2, "FP2")
                changed = True
            if c.rho is None and c.n is not None and c.delta is not None:
                c.rho = _solve_linear(nu * (nu - 1) - 2 * c.delta - c.n, 3, "FP2")
                changed = True
            if c.kappa is None and c.delta is not None and c.rho is not None:
                c.kappa = 3 * nu * (nu - 2) - 6 * c.delta - 8 * c.rho
                changed = True
            if c.p is None and c.delta is not None and c.rho is not None:
                c.p = (nu - 1) * (nu - 2) // 2 - c.delta - c.rho
                changed = True
            if c.delta is None and c.rho is not None and c.p is not None:
                c.delta = (nu - 1) * (nu - 2) // 2 - c.p - c.rho
                changed = True
            if c.delta is None and c.rho is not None and c.kappa is not None:
                c.delta = _solve_linear(3 * nu * (nu - 2) - 8 * c.rho - c.kappa, 6, "FP4")
                changed = True
        if c.n is not None and c.nu is not None and c.rho is not None and c.kappa is None:
            c.kappa = 3 * c.n - 3 * c.nu + c.rho
            changed = True
        if c.n is not None and c.nu is not None and c.kappa is not None and c.rho is None:
            c.rho = 3 * c.nu - 3 * c.n + c.kappa
            changed = True
    # p = (n-1)(n-2)/2 - d - kappa with d, kappa >= 0 already rules out some partial data
    if c.n is not None and (c.d or 0) + (c.kappa or 0) > (c.n - 1) * (c.n - 2) // 2:
        raise Inconsistent("genus would be negative: the curve does not exist", witness="p >= 0")
    missing = [f.name for f in fields(c) if getattr(c, f.name) is None]
    if missing:
        raise Underdetermined("cannot determine " + ", ".join(missing))
    if c.p < 0:
        raise Inconsistent("genus would be negative: the curve does not exist", witness="p >= 0")
    for f in fields(c):
        if getattr(c, f.name) < 0:
            raise Inconsistent(f"negative character {f.name} = {getattr(c, f.name)}", witness=f.name)
    for name, defect in _relations(c):
        if defect:
            raise Inconsistent(f"relation violated: {name}", witness=name)
    return c


def check_relations(c: PluckerChars) -> dict:
    return {name: defect == 0 for name, defect in _relations(c)}


# ---------------------------------------------------------------------------


def first_polar(f: MultiPoly, P) -> MultiPoly:
    c = as_point(P).field_coords()
    acc = MultiPoly(f.variables)
    for v, a in zip(f.variables, c):
        if a:
            acc = acc + f.partial(v) * a
    if acc.is_zero():
        raise ZeroPolar(f"the first polar of {P} vanishes identically")
    return acc


def hessian(f: MultiPoly) -> MultiPoly:
    """Determinant of second partials: degree 3(n-2), a constant for conics."""
    return hessian_form(f)


def node_cusp_counts(f: MultiPoly, seed: int = 0):
    """(d, kappa, singular points); raises UnsupportedSingularity beyond nodes and simple cusps."""
    sings = classify_singularities(f, seed)
    d = k = 0
    for s in sings:
        if s.kind == NODE:
            d += s.orbit_size
        elif s.is_simple_cusp:
            k += s.orbit_size
        else:
            raise UnsupportedSingularity(
                f"singular point {s.point} of kind {s.kind} (multiplicity {s.multiplicity}); resolve it first",
                witness=s,
            )
    return d, k, sings


def curve_class(f: MultiPoly, seed: int = 0) -> int:
    n = f.degree()
    d, k, _ = node_cusp_counts(f, seed)
    return n * (n - 1) - 2 * d - 3 * k


def flex_count(f: MultiPoly, seed: int = 0) -> int:
    n = f.degree()
    d, k, _ = node_cusp_counts(f, seed)
    return 3 * n * (n - 2) - 6 * d - 8 * k


def characters(f: MultiPoly, seed: int = 0) -> PluckerChars:
    """Complete characters of a node/cusp curve from its counted singularities."""
    d, k, _ = node_cusp_counts(f, seed)
    return plucker_solve(PluckerChars(n=f.degree(), d=d, kappa=k))


@dataclass
class Flex:
    point: object
    contact: int | None
    hessian_multiplicity: int

    @property
    def orbit_size(self) -> int:
        return self.point.degree


@dataclass
class FlexReport:
    flexes: list
    singular_contributions: list  # (SingularPoint, I(f, H) at it)

    def count(self) -> int:
        return sum(fl.hessian_multiplicity * fl.orbit_size for fl in self.flexes)


def flexes(f: MultiPoly, seed: int = 0) -> FlexReport:
    n = f.degree()
    d, k, sings = node_cusp_counts(f, seed)
    if n < 3:
        return FlexReport([], [])
    H = hessian(f)
    recs = intersect(f, H, seed)
    out, contrib = [], []
    for rec in recs:
        c = rec.point.field_coords()
        if all(not f.partial(v).evaluate(c) for v in f.variables):
            match = next((s for s in sings if _same_orbit(s.point, rec.point)), None)
            contrib.append((match, rec.local_multiplicity))
            continue
        out.append(Flex(rec.point, tangent_contact(f, rec.point), rec.local_multiplicity))
    return FlexReport(out, contrib)


def _same_orbit(p, q) -> bool:
    if p.degree != q.degree:
        return False
    if isinstance(p, ProjPoint):
        return p == q
    # compare numerically: every conjugate of p appears among conjugates of q
    a, b = p.numeric(40), q.numeric(40)
    return all(any(max(abs(x - y) for x, y in zip(u, w)) < mpmath.mpf(10) ** -25 for w in b) for u in a)


# ---------------------------------------------------------------------------


def dual_curve(f: MultiPoly, seed: int = 0) -> MultiPoly:
    """Equation of the dual curve in line coordinates (written in x, y, z)."""
    n = f.degree()
    if n < 2:
        raise PreconditionViolation("the dual of a line is a point")
    nu = curve_class(f, seed)
    grad = [f.partial(v) for v in f.variables]
    G, D, kdim = image_curve(f, grad, nu, seed)
    if G is None or D != nu or kdim != 1:
        raise EliminationDegenerate(f"dual degree {D} does not match class {nu}")
    return G


# ---------------------------------------------------------------------------
# flex configuration of a smooth cubic


@dataclass
class Triangle:
    parameter: object  # exact rational, "inf", or numeric
    exact_lines: list | None  # rational lines when the triangle splits over Q
    numeric_lines: list  # three lines as mpc triples


@dataclass
class CubicFlexPencil:
    discriminant: list  # coefficients in lambda (degree <= 12)
    quartic: list  # homogeneous quartic in (lambda : mu), coefficients of lambda^i mu^(4-i)
    cube_identity: bool
    triangles: list
    flexes: list  # nine numeric points
    incidences: list  # for each flex, the number of the 12 lines through it
    max_residual: object
    rational_checks: list = field(default_factory=list)


def _mp(c):
    c = Q(c)
    return mpmath.mpf(int(c.numerator)) / int(c.denominator)


def _numeric_form(f: MultiPoly):
    return {e: _mp(c) for e, c in f.terms.items()}


def _eval_numeric(terms, pt):
    acc = mpmath.mpc(0)
    for e, c in terms.items():
        acc += c * pt[0] ** e[0] * pt[1] ** e[1] * pt[2] ** e[2]
    return acc


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _unit(v):
    nrm = mpmath.sqrt(sum(abs(c) ** 2 for c in v))
    return tuple(c / nrm for c in v)


def _line_roots(terms, A, B, dps):
    """Parameters s with T(A + s B) = 0 for a cubic T, plus the cubic's leading behaviour."""
    # sample at 4 points and interpolate the cubic in s
    ss = [mpmath.mpf(k) for k in range(4)]
    vals = [_eval_numeric(terms, tuple(a + s * b for a, b in zip(A, B))) for s in ss]
    # Newton divided differences -> monomial coefficients
    coef = list(vals)
    for j in range(1, 4):
        for i in range(3, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (ss[i] - ss[i - j])
    poly = [mpmath.mpc(0)] * 4
    basis = [mpmath.mpc(1)]
    for i in range(4):
        for k, b in enumerate(basis):
            poly[k] += coef[i] * b
        nb = [mpmath.mpc(0)] * (len(basis) + 1)
        for k, b in enumerate(basis):
            nb[k + 1] += b
            nb[k] -= ss[i] * b
        basis = nb
    hi = list(reversed(poly))
    return mpmath.polyroots(hi, maxsteps=200, extraprec=2 * dps)


def _split_triangle(terms, rng, dps):
    """Numeric factorisation of a cubic form that is a product of three lines."""
    for _ in range(20):
        P1 = tuple(mpmath.mpf(rng.randint(-9, 9)) for _ in range(3))
        D1 = tuple(mpmath.mpf(rng.randint(-9, 9)) for _ in range(3))
        P2 = tuple(mpmath.mpf(rng.randint(-9, 9)) for _ in range(3))
        D2 = tuple(mpmath.mpf(rng.randint(-9, 9)) for _ in range(3))
        try:
            ra = _line_roots(terms, P1, D1, dps)
            rb = _line_roots(terms, P2, D2, dps)
        except mpmath.libmp.NoConvergence:
            continue
        A = [tuple(p + s * d for p, d in zip(P1, D1)) for s in ra]
        B = [tuple(p + s * d for p, d in zip(P2, D2)) for s in rb]
        lines = []
        used = set()
        scale = max(abs(c) for c in terms.values())
        for a in A:
            best, bj = None, None
            for j, b in enumerate(B):
                if j in used:
                    continue
                mid = tuple(x + mpmath.mpf(3) / 7 * y for x, y in zip(_unit(a), _unit(b)))
                val = abs(_eval_numeric(terms, _unit(mid))) / scale
                if best is None or val < best:
                    best, bj = val, j
            used.add(bj)
            lines.append(_unit(_cross(a, B[bj])))
        # validate: product of lines reproduces T up to scale at random points
        ok, ratio = True, None
        for _ in range(3):
            pt = _unit(tuple(mpmath.mpf(rng.randint(-9, 9)) + 1j * rng.randint(-9, 9) for _ in range(3)))
            t = _eval_numeric(terms, pt)
            prod = 1
            for ln in lines:
                prod *= sum(a * b for a, b in zip(ln, pt))
            if t == 0 or prod == 0:
                ok = False
                break
            if ratio is None:
                ratio = t / prod
            elif abs(t / prod - ratio) > abs(ratio) * mpmath.mpf(10) ** (-dps // 2):
                ok = False
                break
        if ok:
            return lines
    raise EliminationDegenerate("could not split the triangle numerically")


def _exact_lines(T: MultiPoly):
    _, facs = T.to_sympy().factor_list()
    lines = []
    for p, m in facs:
        if p.total_degree() != 1:
            return None
        lines.extend([MultiPoly.from_sympy(p, T.variables).primitive()] * m)
    return lines if len(lines) == 3 else None


def cubic_flex_pencil(f: MultiPoly, seed: int = 0, dps: int = 60) -> CubicFlexPencil:
    """Reduce the degree-12 discriminant of f + lam*H to a quartic, build the four
    inflection triangles and check the 9-flex / 12-line configuration."""
    if f.degree() != 3:
        raise NotSmoothCubic("input is not a cubic")
    sings = classify_singularities(f, seed)
    if sings:
        raise NotSmoothCubic("cubic is singular")
    H = hessian(f)
    disc, rs = pencil_singular_members(f, H, seed, locate=False)
    # perfect cube with respect to the homogeneous parameter (lam : mu)
    sq = U.squarefree(disc)
    cube = all(m % 3 == 0 for _, m in sq) and rs.at_infinity % 3 == 0
    quart = [Q(1)]
    for fac, m in sq:
        for _ in range(m // 3):
            quart = U.mul(quart, fac)
    identity = False
    if cube:
        c = disc[-1] / quart[-1] ** 3
        identity = U.scale(U.mul(U.mul(quart, quart), quart), c) == disc
    deg_inf = rs.at_infinity // 3
    # quartic in (lam : mu): lam^i mu^(4-i); roots at infinity lower the affine degree
    homog = [Q(c) for c in quart] + [Q(0)] * (5 - len(quart))
    triangles = []
    rng = random.Random(seed)
    with mpmath.workdps(dps):
        exact_roots, params = [], []
        for fac, _m in U.squarefree(quart):
            for irr, _ in factor_rational(fac):
                if len(irr) == 2:
                    exact_roots.append(-irr[0] / irr[1])
                else:
                    params.extend(z for z, _r in certify_roots(irr, mpmath.mpf(10) ** (-dps + 10), start_dps=dps))
        fn, hn = _numeric_form(f), _numeric_form(H)
        for lam in exact_roots:
            T = f + H * lam
            ex = _exact_lines(T)
            terms = {e: _mp(c) for e, c in T.terms.items()}
            triangles.append(Triangle(lam, ex, _split_triangle(terms, rng, dps)))
        for _ in range(deg_inf):
            ex = _exact_lines(H)
            triangles.append(Triangle("inf", ex, _split_triangle(hn, rng, dps)))
        for lam in params:
            terms = {e: fn.get(e, 0) + lam * hn.get(e, 0) for e in set(fn) | set(hn)}
            triangles.append(Triangle(lam, None, _split_triangle(terms, rng, dps)))
        # nine flexes: cut f by the three lines of the first triangle
        flex_pts = []
        for ln in triangles[0].numeric_lines:
            A, B = _line_basis(ln, rng)
            for s in _line_roots(fn, A, B, dps):
                flex_pts.append(_unit(tuple(a + s * b for a, b in zip(A, B))))
        residual = mpmath.mpf(0)
        incid = []
        all_lines = [ln for t in triangles for ln in t.numeric_lines]
        tol = mpmath.mpf(10) ** -30
        for P in flex_pts:
            hits = 0
            for ln in all_lines:
                v = abs(sum(a * b for a, b in zip(ln, P)))
                if v < tol:
                    hits += 1
                    residual = max(residual, v)
            incid.append(hits)
    checks = _rational_checks(f, triangles, seed)
    return CubicFlexPencil(disc, homog, identity, triangles, flex_pts, incid, residual, checks)


def _line_basis(ln, rng):
    """Two generic points spanning the line ln."""
    k = max(range(3), key=lambda i: abs(ln[i]))
    others = [i for i in range(3) if i != k]
    A = [mpmath.mpc(0)] * 3
    B = [mpmath.mpc(0)] * 3
    A[others[0]] = mpmath.mpc(1)
    A[k] = -ln[others[0]] / ln[k]
    B[others[1]] = mpmath.mpc(1)
    B[k] = -ln[others[1]] / ln[k]
    # mix so neither point is special (e.g. lying on the cubic)
    a, b = rng.randint(1, 9), rng.randint(1, 9)
    return tuple(x + a * y for x, y in zip(A, B)), tuple(y - b * x for x, y in zip(A, B))


def _rational_checks(f, triangles, seed):
    """Exact incidences between rational flexes and rational triangle lines."""
    rat_lines = [ln for t in triangles if t.exact_lines for ln in t.exact_lines]
    if not rat_lines:
        return []
    out = []
    rep = flexes(f, seed)
    for fl in rep.flexes:
        if isinstance(fl.point, ProjPoint):
            on = sum(1 for ln in rat_lines if not ln.evaluate(fl.point.rationals()))
            out.append((fl.point, on))
    return out
