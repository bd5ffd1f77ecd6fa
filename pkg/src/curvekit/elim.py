"""Elimination: Sylvester resultants, discriminants, squarefree parts, root location,
and the projection machinery used to find common zeros of two plane curves.

The common-zero solver projects from a random point (seeded) onto a line.
A projection is accepted only after checking that every fiber of the
resultant carries a single common zero; multiplicities of resultant roots
then equal local intersection numbers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import mpmath
import sympy

from . import _upoly as U
from ._upoly import Q
from .errors import (
    AllMembersSingular,
    CommonComponent,
    DegreeZero,
    NotACurve,
    PrecisionUnreachable,
    PreconditionViolation,
    ShearExhausted,
)
from .numberfield import NumberField, numeric_roots
from .points import AlgebraicPoint, ProjPoint
from .poly import MultiPoly, transform

# ---------------------------------------------------------------------------
# Sylvester matrices and resultants


def sylvester_matrix(f: MultiPoly, g: MultiPoly, v: str):
    """Sylvester matrix of f and g in ``v``: n rows of f-coefficients, then m rows of g."""
    fc = f.coefficients_in(v)
    gc = g.coefficients_in(v)
    m, n = len(fc) - 1, len(gc) - 1
    if m <= 0 or n <= 0:
        raise DegreeZero(f"input has {v}-degree 0")
    size = m + n
    zero = MultiPoly(f.variables)
    rows = []
    for k in range(n):
        row = [zero] * size
        for i, c in enumerate(reversed(fc)):
            row[k + i] = c
        rows.append(row)
    for k in range(m):
        row = [zero] * size
        for i, c in enumerate(reversed(gc)):
            row[k + i] = c
        rows.append(row)
    return rows


def _bareiss(mat, exact_div, is_zero, sub_mul):
    """Fraction-free determinant.  ``sub_mul(a, b, c, d) = a*b - c*d``."""
    m = [list(r) for r in mat]
    n = len(m)
    sign = 1
    prev = None
    for k in range(n - 1):
        if is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not is_zero(m[i][k])), None)
            if swap is None:
                return None
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = sub_mul(m[i][j], m[k][k], m[i][k], m[k][j])
                m[i][j] = exact_div(val, prev) if prev is not None else val
        prev = m[k][k]
    return m[n - 1][n - 1], sign


def det_multipoly(mat, variables) -> MultiPoly:
    if not mat:
        return MultiPoly.constant(1, variables)
    out = _bareiss(
        mat,
        lambda a, b: a.exact_div(b),
        lambda a: a.is_zero(),
        lambda a, b, c, d: a * b - c * d,
    )
    if out is None:
        return MultiPoly(variables)
    d, sign = out
    return d if sign > 0 else -d


def det_upoly(mat):
    """Determinant of a matrix of dense univariate polynomials."""
    if not mat:
        return [Q(1)]
    out = _bareiss(
        mat,
        U.exact_div,
        lambda a: not a,
        lambda a, b, c, d: U.sub(U.mul(a, b), U.mul(c, d)),
    )
    if out is None:
        return []
    d, sign = out
    return d if sign > 0 else U.neg(d)


def _sylvester_dense(F, G):
    """Sylvester matrix (dense-poly entries) for y-coefficient lists F, G (low to high)."""
    m, n = len(F) - 1, len(G) - 1
    size = m + n
    rows = []
    for k in range(n):
        row = [[] for _ in range(size)]
        for i, c in enumerate(reversed(F)):
            row[k + i] = c
        rows.append(row)
    for k in range(m):
        row = [[] for _ in range(size)]
        for i, c in enumerate(reversed(G)):
            row[k + i] = c
        rows.append(row)
    return rows


def res_dense(F, G):
    """Res_y for polynomials given as lists (in y) of dense x-polynomials."""
    return det_upoly(_sylvester_dense(F, G))


def first_subresultant(F, G):
    """(s10, s11): the first subresultant S_1 = s11*y + s10, as dense x-polys."""
    m, n = len(F) - 1, len(G) - 1
    if n == 1:
        return G[0], G[1]
    if m == 1:
        return F[0], F[1]
    size = m + n - 2
    rows = []
    for k in range(n - 1):
        row = [[] for _ in range(m + n - 1)]
        for i, c in enumerate(reversed(F)):
            row[k + i] = c
        rows.append(row)
    for k in range(m - 1):
        row = [[] for _ in range(m + n - 1)]
        for i, c in enumerate(reversed(G)):
            row[k + i] = c
        rows.append(row)
    # columns 0..m+n-2 hold y^{m+n-2} .. y^0
    base = list(range(size - 1))
    out = []
    for col in (m + n - 2, m + n - 3):  # y^0 and y^1 columns
        sub = [[r[c] for c in base] + [r[col]] for r in rows]
        out.append(det_upoly(sub))
    return out[0], out[1]


def resultant(f: MultiPoly, g: MultiPoly, v: str) -> MultiPoly:
    """Sylvester resultant of f and g with respect to ``v`` (f-rows first)."""
    if f.degree_in(v) <= 0 or g.degree_in(v) <= 0:
        raise DegreeZero(f"an input has {v}-degree 0")
    others = set(f.used_variables()) | set(g.used_variables())
    others.discard(v)
    if len(others) <= 1:
        x = others.pop() if others else None
        F = [c.univariate(x) if x else U.trim([c.constant_term()]) for c in f.coefficients_in(v)]
        G = [c.univariate(x) if x else U.trim([c.constant_term()]) for c in g.coefficients_in(v)]
        F = [U.trim(c) for c in F]
        G = [U.trim(c) for c in G]
        r = res_dense(F, G)
        if x is None:
            return MultiPoly.constant(r[0] if r else Q(0), f.variables)
        return MultiPoly.from_univariate(r, x, f.variables)
    return det_multipoly(sylvester_matrix(f, g, v), f.variables)


def discriminant_univariate(f: MultiPoly, v: str | None = None):
    """(-1)^{n(n-1)/2} Res(f, f') / lc(f); a rational or a polynomial in the parameters."""
    if v is None:
        used = f.used_variables()
        if len(used) != 1:
            raise ValueError("specify the variable for a multivariate input")
        v = used[0]
    n = f.degree_in(v)
    if n < 2:
        raise PreconditionViolation("degree must be at least 2")
    r = resultant(f, f.partial(v), v)
    lc = f.coefficients_in(v)[-1]
    d = r.exact_div(lc)
    if (n * (n - 1) // 2) % 2:
        d = -d
    if d.is_constant():
        return d.constant_term()
    return d


# ---------------------------------------------------------------------------
# squarefree decomposition and roots


def squarefree_decomposition(f: MultiPoly, v: str | None = None):
    """Monic squarefree factors with multiplicities, sorted by multiplicity."""
    coeffs = f.univariate(v)
    if len(U.trim(coeffs)) < 2:
        raise PreconditionViolation("degree must be at least 1")
    var = v or (f.used_variables() or f.variables)[0]
    return [(MultiPoly.from_univariate(p, var, f.variables), m) for p, m in U.squarefree(coeffs)]


def factor_rational(coeffs):
    """Irreducible factors over Q of a dense rational polynomial: [(monic factor, mult)]."""
    ints = U.to_int_primitive(coeffs)
    if len(ints) <= 1:
        return []
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(ints)), t, domain="ZZ")
    _, facs = poly.factor_list()
    out = []
    for p, m in facs:
        cs = [Q(int(c)) for c in reversed(p.all_coeffs())]
        out.append((U.monic(cs), m))
    out.sort(key=lambda pm: (len(pm[0]), pm[1], [str(c) for c in pm[0]]))
    return out


@dataclass
class RootSet:
    """Roots of a univariate polynomial, counted exactly.

    ``numeric_locations`` holds (approximation, error bound, multiplicity)
    for each non-rational root; ``at_infinity`` is the multiplicity of the
    root at infinity when the input is read as a binary form of a stated degree.
    """

    exact_rational_roots: list = field(default_factory=list)
    nonrational_count_by_multiplicity: dict = field(default_factory=dict)
    numeric_locations: list = field(default_factory=list)
    at_infinity: int = 0
    factors: list = field(default_factory=list)

    def total(self) -> int:
        return (
            sum(m for _, m in self.exact_rational_roots)
            + sum(m * c for m, c in self.nonrational_count_by_multiplicity.items())
            + self.at_infinity
        )

    def distinct(self) -> int:
        return (
            len(self.exact_rational_roots)
            + sum(self.nonrational_count_by_multiplicity.values())
            + (1 if self.at_infinity else 0)
        )


def certify_roots(coeffs, bound: float, start_dps: int = 30, max_dps: int = 2000):
    """Numeric roots of a squarefree polynomial with Newton-type inclusion radii.

    Each radius is deg*|p(z)/p'(z)|; the disks are required to be pairwise
    disjoint, which guarantees one root in each.
    """
    n = len(coeffs) - 1
    dps = start_dps
    while dps <= max_dps:
        roots = numeric_roots(coeffs, dps)
        with mpmath.workdps(dps + 20):
            pc = [mpmath.mpf(int(c.numerator)) / int(c.denominator) for c in coeffs]
            dpc = [pc[i] * i for i in range(1, len(pc))]
            radii = []
            for z in roots:
                pv = U.evaluate(pc, z)
                dv = U.evaluate(dpc, z)
                radii.append(mpmath.inf if dv == 0 else n * abs(pv / dv))
            ok = all(r <= bound for r in radii)
            if ok:
                for i in range(len(roots)):
                    for j in range(i + 1, len(roots)):
                        if abs(roots[i] - roots[j]) <= radii[i] + radii[j]:
                            ok = False
            if ok:
                return list(zip(roots, radii))
        dps *= 2
    raise PrecisionUnreachable(f"could not isolate roots to {bound} within {max_dps} digits")


def locate_roots(f, bound: float = 1e-15, *, degree: int | None = None, numeric: bool = True) -> RootSet:
    """Exact root structure plus certified numeric locations of non-rational roots.

    ``f`` is a univariate MultiPoly or a dense coefficient list.  When
    ``degree`` exceeds the actual degree the deficit is reported as a root at
    infinity.
    """
    coeffs = U.trim(f.univariate() if isinstance(f, MultiPoly) else [Q(c) for c in f])
    if not coeffs:
        raise PreconditionViolation("zero polynomial")
    rs = RootSet()
    actual = len(coeffs) - 1
    if degree is not None:
        rs.at_infinity = degree - actual
    for part, mult in U.squarefree(coeffs):
        for q, _ in factor_rational(part):
            rs.factors.append((q, mult))
            if len(q) == 2:
                rs.exact_rational_roots.append((-q[0] / q[1], mult))
            else:
                k = len(q) - 1
                rs.nonrational_count_by_multiplicity[mult] = rs.nonrational_count_by_multiplicity.get(mult, 0) + k
                if numeric:
                    for z, r in certify_roots(q, bound):
                        rs.numeric_locations.append((z, r, mult))
    rs.exact_rational_roots.sort()
    return rs


# ---------------------------------------------------------------------------
# projections and common zeros of two ternary forms


@dataclass(frozen=True)
class Shear:
    """Coordinate change x = x' + a*y', y = y', z = z' + b*y' (projection centre (a:1:b))."""

    a: object
    b: object

    def matrix(self):
        return [[Q(1), Q(self.a), Q(0)], [Q(0), Q(1), Q(0)], [Q(0), Q(self.b), Q(1)]]

    def apply(self, f: MultiPoly) -> MultiPoly:
        return transform(f, self.matrix())

    def pull_back(self, x, y, z):
        """Original coordinates of the sheared point (x:y:z)."""
        return (x + y * self.a, y, z + y * self.b)

    def as_dict(self):
        return {"a": str(self.a), "b": str(self.b)}


def random_shear(rng: random.Random, attempt: int = 0) -> Shear:
    span = 3 + 4 * attempt
    return Shear(Q(rng.randint(-span, span)), Q(rng.randint(-span, span)))


def _ycoeffs(f: MultiPoly):
    """Coefficient list in y of f(x, y, 1) as dense x-polynomials."""
    fa = f.subs({"z": 1})
    out = []
    for c in fa.coefficients_in("y"):
        out.append(U.trim(c.univariate("x")) if not c.is_zero() else [])
    return out


def _at_infinity(f: MultiPoly):
    """Dense y-polynomial f(1, y, 0)."""
    return U.trim(f.subs({"x": 1, "z": 0}).univariate("y"))


@dataclass
class Projection:
    """Data of one accepted projection of f ∩ g from the centre of ``shear``."""

    shear: Shear
    F: list
    G: list
    R: list
    inf_mult: int
    inf_gcd: list
    factors: list
    s10: list | None = None
    s11: list | None = None


def _single_root_power(h):
    """If h = c*(y - r)^k return r, else None."""
    h = U.monic(h)
    k = len(h) - 1
    if k < 1:
        return None
    r = -h[k - 1] / k
    lin = [-r, r * 0 + 1]
    acc = lin
    for _ in range(k - 1):
        acc = U.mul(acc, lin)
    if len(acc) == len(h) and all(a == b for a, b in zip(acc, h)):
        return r
    return None


def _common_component_witness(f, g):
    fs, gs = f.to_sympy(), g.to_sympy()
    h = sympy.gcd(fs, gs)
    if h.total_degree() > 0:
        return MultiPoly.from_sympy(h, f.variables).primitive()
    return None


def project(f: MultiPoly, g: MultiPoly, rng: random.Random, tries: int = 12, filters=(), select=None, check_infinity=True) -> Projection:
    """Find a shear for which every resultant fiber holds exactly one common zero."""
    m, n = f.degree(), g.degree()
    for attempt in range(tries):
        sh = random_shear(rng, attempt)
        c = (sh.a, Q(1), sh.b)
        if not f.evaluate(c) or not g.evaluate(c):
            continue
        fs, gs = sh.apply(f), sh.apply(g)
        F, G = _ycoeffs(fs), _ycoeffs(gs)
        R = res_dense(F, G)
        if not R:
            w = _common_component_witness(f, g)
            if w is not None:
                raise CommonComponent("curves share a component", witness=w)
            continue
        inf_mult = m * n - (len(R) - 1)
        inf_gcd = []
        if inf_mult and check_infinity:
            h = U.gcd(_at_infinity(fs), _at_infinity(gs))
            if _single_root_power(h) is None:
                continue
            inf_gcd = h
        proj = Projection(sh, F, G, R, inf_mult, inf_gcd, [])
        facs = factor_rational(R)
        if filters:
            facs = [(q, e) for q, e in facs if all(not U.rem(flt(sh), q) for flt in filters)]
        if select is not None:
            facs = [(q, e) for q, e in facs if select(sh, q)]
        ok = True
        for q, e in facs:
            if _fiber_root(proj, q) is None:
                ok = False
                break
        if not ok:
            continue
        proj.factors = facs
        return proj
    raise ShearExhausted(f"no generic projection found in {tries} attempts")


def _fiber_root(proj: Projection, q):
    """y-coordinate (in K = Q[t]/q) of the unique common zero over a root of q."""
    if proj.s10 is None:
        proj.s10, proj.s11 = first_subresultant(proj.F, proj.G)
    s11 = U.rem(proj.s11, q)
    if s11 and len(U.gcd(s11, q)) == 1:
        K = NumberField(q) if len(q) > 2 else None
        if K is None:
            t = -q[0] / q[1]
            return -U.evaluate(proj.s10, t) / U.evaluate(proj.s11, t)
        return -K(U.rem(proj.s10, q)) / K(s11)
    # fall back to a gcd over the field
    if len(q) == 2:
        t = -q[0] / q[1]
        fy = U.trim([U.evaluate(c, t) for c in proj.F])
        gy = U.trim([U.evaluate(c, t) for c in proj.G])
    else:
        K = NumberField(q)
        fy = U.trim([K(U.rem(c, q)) if c else K(0) for c in proj.F])
        gy = U.trim([K(U.rem(c, q)) if c else K(0) for c in proj.G])
    h = U.gcd(fy, gy)
    if len(h) < 2:
        return None
    return _single_root_power(h)


def projection_points(proj: Projection):
    """Common zeros (original coordinates) with multiplicities from an accepted projection."""
    sh = proj.shear
    out = []
    for q, e in proj.factors:
        y = _fiber_root(proj, q)
        if len(q) == 2:
            x = -q[0] / q[1]
            out.append((ProjPoint(*sh.pull_back(x, y, Q(1))), e))
        else:
            K = NumberField(q)
            x = K.gen()
            pt = AlgebraicPoint.make(K, sh.pull_back(x, y, K(1)))
            out.append((pt, e))
    if proj.inf_mult and proj.inf_gcd:
        y = _single_root_power(proj.inf_gcd)
        out.append((ProjPoint(*sh.pull_back(Q(1), y, Q(0))), proj.inf_mult))
    return out


def common_zeros(f: MultiPoly, g: MultiPoly, seed: int = 0, tries: int = 12):
    """All common zeros of two coprime ternary forms with intersection multiplicities."""
    rng = random.Random(seed)
    proj = project(f, g, rng, tries)
    return projection_points(proj), proj


# ---------------------------------------------------------------------------
# singular points


def repeated_factor(f: MultiPoly):
    """A factor of f occurring to power >= 2, or None."""
    _, facs = f.to_sympy().sqf_list()
    for p, m in facs:
        if m >= 2 and p.total_degree() > 0:
            return MultiPoly.from_sympy(p, f.variables).primitive(), m
    return None


@dataclass
class SingularLocus:
    points: list
    shear: Shear
    rootset: RootSet


def singular_locus(f: MultiPoly, seed: int = 0, tries: int = 12) -> SingularLocus:
    """Singular points of a squarefree ternary form (exact, as Galois orbits)."""
    rep = repeated_factor(f)
    if rep is not None:
        raise NotACurve("form has a repeated factor", witness=rep[0])
    n = f.degree()
    if n < 2:
        return SingularLocus([], Shear(Q(0), Q(0)), RootSet())
    rng = random.Random(seed)
    for attempt in range(tries):
        sh = random_shear(rng, attempt)
        fs = sh.apply(f)
        polars = [_unshear(sh, fs.partial(v)) for v in "xyz"]
        if polars[0].is_zero() or polars[1].is_zero():
            continue
        third = polars[2]

        def filt(s2, p1=polars[0], p3=third):
            if p3.is_zero():
                return []
            return res_dense(_ycoeffs(s2.apply(p1)), _ycoeffs(s2.apply(p3)))

        try:
            proj = project(polars[0], polars[1], random.Random(rng.random()), tries, filters=(filt,))
        except (CommonComponent, ShearExhausted):
            continue
        found = projection_points(proj)
        pts, rs = [], RootSet()
        # the RootSet is over the sheared x-coordinate; projection_points lists
        # one point per accepted factor, then the point at infinity if any
        for k, (p, _) in enumerate(found):
            if not _is_singular_at(f, p):
                continue
            pts.append(p)
            if k >= len(proj.factors):
                rs.at_infinity += 1
                continue
            q = proj.factors[k][0]
            rs.factors.append((q, 1))
            if len(q) == 2:
                rs.exact_rational_roots.append((-q[0] / q[1], 1))
            else:
                rs.nonrational_count_by_multiplicity[1] = rs.nonrational_count_by_multiplicity.get(1, 0) + len(q) - 1
                rs.numeric_locations.extend((z, r, 1) for z, r in certify_roots(q, 1e-15))
        rs.exact_rational_roots.sort()
        return SingularLocus(pts, proj.shear, rs)
    raise ShearExhausted("could not find generic coordinates for the singular locus")


def _unshear(sh: Shear, p: MultiPoly) -> MultiPoly:
    inv = [[Q(1), -Q(sh.a), Q(0)], [Q(0), Q(1), Q(0)], [Q(0), -Q(sh.b), Q(1)]]
    return transform(p, inv)


def _is_singular_at(f: MultiPoly, p) -> bool:
    c = p.field_coords()
    return all(not f.partial(v).evaluate(c) for v in f.variables)


@dataclass
class SingularityWitness:
    singular: bool
    points: list
    shear: dict
    rootset: RootSet


def curve_is_singular(f: MultiPoly, seed: int = 0) -> SingularityWitness:
    if f.degree() < 2:
        raise PreconditionViolation("degree must be at least 2")
    loc = singular_locus(f, seed)
    return SingularityWitness(bool(loc.points), loc.points, loc.shear.as_dict(), loc.rootset)


# ---------------------------------------------------------------------------
# singular members of a pencil


def _poisson_value(grad, rng_vals):
    """Macaulay resultant of three ternary forms of equal degree via the Poisson formula.

    Returns None when the chosen coordinates are not in shape position.
    """
    F0, F1, F2 = grad
    d = F0.degree()
    b0 = U.trim(F0.subs({"z": 0, "x": 1}).univariate("y")) if not F0.is_zero() else []
    b1 = U.trim(F1.subs({"z": 0, "x": 1}).univariate("y")) if not F1.is_zero() else []
    A, B = _ycoeffs(F0), _ycoeffs(F1)
    if len(A) - 1 != d or len(B) - 1 != d or len(A[-1]) != 1 or len(B[-1]) != 1:
        return None
    rbar = U.resultant(b0, b1) if (len(b0) > 1 and len(b1) > 1) else None
    if rbar is None or not rbar:
        return None
    R = res_dense(A, B)
    if len(R) - 1 != d * d:
        return None
    if len(U.gcd(R, U.derivative(R))) != 1:
        return None
    s10, s11 = first_subresultant(A, B)
    g, s, _ = U.xgcd(U.rem(s11, R), R)
    if len(g) != 1:
        return None
    phi = U.rem(U.mul(U.neg(s10), s), R)
    # F2(x, phi(x), 1) mod R
    h = []
    for e, c in F2.subs({"z": 1}).terms.items():
        term = U.mul(U.powmod([Q(0), Q(1)], e[0], R) if e[0] else [Q(1)], U.powmod(phi, e[1], R) if e[1] else [Q(1)])
        h = U.add(h, U.scale(term, c))
    h = U.rem(h, R)
    lc = R[-1]
    norm = U.resultant(R, h) / lc ** (len(h) - 1) if h else Q(0)
    return rbar**d * norm


def pencil_singular_members(f: MultiPoly, g: MultiPoly, seed: int = 0, locate: bool = True):
    """Discriminant of f + lam*g as a polynomial in lam, plus its roots.

    Returns (coefficient list, RootSet).  The RootSet's ``at_infinity`` counts
    the degree deficit (members degenerate at lam = infinity, i.e. g itself).
    """
    n = f.degree()
    if g.degree() != n or not f.is_homogeneous() or not g.is_homogeneous():
        raise PreconditionViolation("pencil members must be forms of the same degree")
    if f.proportional(g):
        raise PreconditionViolation("pencil generators are proportional")
    D = 3 * (n - 1) ** 2
    rng = random.Random(seed)
    for attempt in range(12):
        M = _random_unimodular(rng, attempt)
        ft, gt = transform(f, M), transform(g, M)
        gf = [ft.partial(v) for v in "xyz"]
        gg = [gt.partial(v) for v in "xyz"]
        xs, ys = [], []
        lam = Q(0)
        budget = 6 * (D + 1) + 40
        while len(xs) < D + 1 and budget:
            budget -= 1
            grad = [a + b * lam for a, b in zip(gf, gg)]
            val = _poisson_value(grad, None)
            if val is not None:
                xs.append(lam)
                ys.append(val)
            lam = Q(rng.randint(-50 * (attempt + 1), 50 * (attempt + 1)), rng.randint(1, 7))
            while lam in xs:
                lam = lam + Q(1, 3)
        if len(xs) < D + 1:
            continue
        poly = U.interpolate(xs, ys)
        if not poly:
            raise AllMembersSingular("every member of the pencil is singular")
        rs = locate_roots(poly, degree=D, numeric=locate)
        return poly, rs
    raise AllMembersSingular("could not evaluate the discriminant at enough regular members")


def _random_unimodular(rng: random.Random, attempt: int):
    span = 2 + attempt
    while True:
        a, b, c = (Q(rng.randint(-span, span)) for _ in range(3))
        M = [[Q(1), a, Q(0)], [Q(0), Q(1), Q(0)], [b, c, Q(1)]]
        # det = 1 by construction
        return M
