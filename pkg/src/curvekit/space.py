"""Space curves by their numerical characters: Cayley's relations, complete
intersections and linkage, plane projections, postulation, Castelnuovo's
bound and moduli counts."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

import sympy

from ._upoly import Q
from .cremona import net_image
from .elim import resultant
from .errors import (
    CenterDegenerate,
    DegenerateParametrization,
    Inconsistent,
    InconsistentLinkage,
    OutOfRegime,
    PreconditionViolation,
    Underdetermined,
)
from .linalg import inverse, rank
from .points import ProjPoint
from .poly import XYZ, XYZW, MultiPoly, monomials, transform


@dataclass
class CayleyChars:
    n: int | None = None
    r: int | None = None
    nu: int | None = None
    d: int | None = None
    delta: int | None = None
    t: int | None = None
    tau: int | None = None
    K: int | None = None
    chi: int | None = None
    p: int | None = None

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def cayley_relations(c: CayleyChars) -> dict:
    """Defect (lhs - rhs) of each relation; all zero on a consistent record."""
    n, r, nu, d, dl, t, tau, K, chi, p = (getattr(c, f.name) for f in fields(c))
    return {
        "r = n(n-1) - 2d - 3K": r - (n * (n - 1) - 2 * d - 3 * K),
        "n = r(r-1) - 2t - 3nu": n - (r * (r - 1) - 2 * t - 3 * nu),
        "nu = 3n(n-2) - 6d - 8K": nu - (3 * n * (n - 2) - 6 * d - 8 * K),
        "r = nu(nu-1) - 2delta - 3chi": r - (nu * (nu - 1) - 2 * dl - 3 * chi),
        "nu = r(r-1) - 2tau - 3n": nu - (r * (r - 1) - 2 * tau - 3 * n),
        "n = 3nu(nu-2) - 6delta - 8chi": n - (3 * nu * (nu - 2) - 6 * dl - 8 * chi),
        "p = (n-1)(n-2)/2 - d - K": 2 * p - ((n - 1) * (n - 2) - 2 * d - 2 * K),
        "p = (nu-1)(nu-2)/2 - delta - chi": 2 * p - ((nu - 1) * (nu - 2) - 2 * dl - 2 * chi),
    }


def _half(v, name):
    if v % 2:
        raise Inconsistent(f"{name} is not an integer", witness=name)
    return v // 2


def cayley_complete(known: CayleyChars) -> CayleyChars:
    """Complete from (n, p) with K = 0, or from (n, d, K)."""
    c = replace(known)
    if c.n is None:
        raise Underdetermined("the order n is required")
    n = c.n
    if c.K is None:
        if c.d is not None and c.p is not None:
            c.K = (n - 1) * (n - 2) // 2 - c.d - c.p
        else:
            c.K = 0
    if c.d is None:
        if c.p is None:
            raise Underdetermined("need the genus p or the apparent double points d")
        c.d = (n - 1) * (n - 2) // 2 - c.p - c.K
    if c.p is None:
        c.p = (n - 1) * (n - 2) // 2 - c.d - c.K
    c.r = n * (n - 1) - 2 * c.d - 3 * c.K
    c.nu = 3 * n * (n - 2) - 6 * c.d - 8 * c.K
    r, nu = c.r, c.nu
    c.t = _half(r * (r - 1) - n - 3 * nu, "t")
    c.tau = _half(r * (r - 1) - nu - 3 * n, "tau")
    # the two dual relations in delta, chi
    c.chi = 3 * nu - 3 * r + n
    c.delta = _half(nu * (nu - 1) - r - 3 * c.chi, "delta")
    for f in fields(c):
        v = getattr(c, f.name)
        if v < 0:
            raise Inconsistent(f"negative character {f.name} = {v}", witness=f.name)
    bad = [k for k, v in cayley_relations(c).items() if v]
    if bad:
        raise Inconsistent("relation violated: " + bad[0], witness=bad[0])
    return c


def ci_characters(mu: int, nu: int) -> CayleyChars:
    """Characters of a smooth complete intersection of surfaces of degrees mu and nu."""
    if mu < 1 or nu < 1:
        raise PreconditionViolation("surface degrees must be positive")
    n = mu * nu
    p = mu * nu * (mu + nu - 4) // 2 + 1
    c = cayley_complete(CayleyChars(n=n, p=p, K=0))
    assert c.r == mu * nu * (mu + nu - 2)
    assert 2 * c.d == mu * nu * (mu - 1) * (nu - 1)
    return c


@dataclass(frozen=True)
class LinkageInput:
    mu: int
    nu: int
    n1: int
    p1: int | None = None
    i: int | None = None


@dataclass
class Linkage:
    n2: int
    p2: int
    i: int
    p_total: int

    def as_dict(self):
        return dict(self.__dict__)


def linked_characters(inp: LinkageInput) -> Linkage:
    mu, nu, n1 = inp.mu, inp.nu, inp.n1
    n2 = mu * nu - n1
    if n2 < 1 or n1 < 1:
        raise InconsistentLinkage(f"residual order {n2} is not positive", witness=n2)
    s = mu + nu - 4
    if inp.p1 is not None:
        i = n1 * s - 2 * inp.p1 + 2
        if inp.i is not None and inp.i != i:
            raise InconsistentLinkage(f"i = {inp.i} contradicts genus {inp.p1} (needs i = {i})", witness=i)
        p1 = inp.p1
    elif inp.i is not None:
        i = inp.i
        p1 = _link_half(n1 * s - i + 2, "p1")
    else:
        raise Underdetermined("need p1 or i")
    if i < 1:
        raise InconsistentLinkage(f"contact count i = {i} must be positive", witness=i)
    p2 = _link_half(n2 * s - i + 2, "p2")
    if p1 < 0 or p2 < 0:
        raise InconsistentLinkage("negative genus in the linkage", witness=(p1, p2))
    total = p1 + p2 + i - 1
    assert total == ci_characters(mu, nu).p
    return Linkage(n2, p2, i, total)


def _link_half(v, name):
    if v % 2:
        raise InconsistentLinkage(f"{name} would not be an integer", witness=name)
    return v // 2


# ---------------------------------------------------------------------------
# projection to the plane


def _center_matrix(center):
    """Matrix with last column = center and unit vectors elsewhere."""
    c = [Q(v) for v in ProjPoint(*center).coords]
    k = max(i for i in range(4) if c[i])
    others = [i for i in range(4) if i != k]
    M = [[Q(0)] * 4 for _ in range(4)]
    for col, i in enumerate(others):
        M[i][col] = Q(1)
    for i in range(4):
        M[i][3] = c[i]
    return M


def project_ci(f: MultiPoly, g: MultiPoly, center, expected_degree: int | None = None) -> MultiPoly:
    """Plane image of the curve f = g = 0 projected from ``center``."""
    if f.variables != XYZW or g.variables != XYZW:
        raise PreconditionViolation("surfaces must be forms in x, y, z, w")
    M = _center_matrix(center)
    fc, gc = transform(f, M), transform(g, M)
    cpt = ProjPoint(*center).rationals()
    on_curve = not f.evaluate(cpt) and not g.evaluate(cpt)
    n = f.degree() * g.degree()
    want = expected_degree if expected_degree is not None else n - (1 if on_curve else 0)
    try:
        R = resultant(fc, gc, "w")
    except Exception as exc:
        raise CenterDegenerate("elimination failed from this center", witness=str(exc)) from exc
    if R.is_zero():
        raise CenterDegenerate("the surfaces share a cone through the center")
    _, facs = R.to_sympy().sqf_list()
    out = MultiPoly.constant(1, XYZW)
    for p_, _m in facs:
        out = out * MultiPoly.from_sympy(p_, XYZW)
    plane = MultiPoly(XYZ, {e[:3]: c for e, c in out.terms.items()}).primitive()
    if plane.degree() != want:
        raise CenterDegenerate(f"projection has degree {plane.degree()}, expected {want}", witness=plane.degree())
    return plane


def project_parametrized(forms, center) -> MultiPoly:
    """Plane image of the rational space curve (a(s,t) : b : c : d) projected from ``center``."""
    if len(forms) != 4:
        raise PreconditionViolation("need four binary forms")
    M = _center_matrix(center)
    Minv = inverse(M)
    st = ("x", "y", "z")
    lifted = [MultiPoly(st, {(e[0], e[1], 0): c for e, c in q.terms.items()}) for q in forms]
    # coordinates in the frame where the center is (0:0:0:1); drop the last one
    images = []
    for row in Minv[:3]:
        acc = MultiPoly(st)
        for c, q in zip(row, lifted):
            if c:
                acc = acc + q * c
        images.append(acc)
    return net_image(MultiPoly.var("z", st), *images)


# ---------------------------------------------------------------------------
# postulation and bounds


@dataclass
class Postulation:
    value: int
    threshold: int
    reliable: bool

    def as_dict(self):
        return dict(self.__dict__)


def postulation(n: int, p: int, m: int, ci: tuple | None = None) -> Postulation:
    """Normal postulation mn - p + 1 of a curve for surfaces of degree m.

    Reliable from m >= n - 2, or from m >= mu + nu - 3 for a complete
    intersection (mu, nu); below that the value is returned flagged.
    """
    thr = n - 2 if ci is None else ci[0] + ci[1] - 3
    return Postulation(m * n - p + 1, thr, m >= thr)


def postulation_rank(param, m: int) -> int:
    """Independent conditions a rational space curve imposes on degree-m surfaces."""
    if len(param) != 4:
        raise PreconditionViolation("need four binary forms")
    nz = [q for q in param if not q.is_zero()]
    degs = {q.degree() for q in nz}
    if len(degs) != 1 or not all(q.is_homogeneous() for q in nz):
        raise DegenerateParametrization("forms must be homogeneous of one degree")
    k = degs.pop()
    g = nz[0].to_sympy()
    for q in nz[1:]:
        g = sympy.gcd(g, q.to_sympy())
    if sympy.Poly(g, *[sympy.Symbol(v) for v in param[0].variables]).total_degree() > 0:
        raise DegenerateParametrization("forms have a common factor", witness=str(g))
    bivars = param[0].variables
    target = monomials(m * k, len(bivars))
    rows = []
    for e in monomials(m, 4):
        acc = MultiPoly.constant(1, bivars)
        for q, a in zip(param, e):
            if a:
                acc = acc * q**a
        rows.append([acc.coeff(t) for t in target])
    return rank(rows, len(target))


def castelnuovo_bound(n: int) -> int:
    if n < 3:
        raise PreconditionViolation("n must be at least 3")
    chi = (n - 2) // 2 if n % 2 == 0 else (n - 3) // 2
    return chi * (n - chi - 2)


def quadric_bidegree_genus(n: int, mu: int) -> int:
    if not 1 <= mu <= n - 1:
        raise PreconditionViolation("need 1 <= mu <= n - 1")
    return (mu - 1) * (n - mu - 1)


def moduli_count(n: int, p: int) -> int:
    """Number of parameters of curves of order n and genus p in space (non-special range)."""
    if p < 0 or n < 1:
        raise PreconditionViolation("need n >= 1, p >= 0")
    if p in (0, 1) or n - 3 >= p:
        return 4 * n
    raise OutOfRegime(f"n - 3 = {n - 3} < p = {p}: the count needs non-special curves")
