"""Local analysis of plane curves at points: multiplicity, tangent cones,
flexes, singular-point classification and intersection multiplicities.

Points may be rational (:class:`ProjPoint`) or Galois orbits of algebraic
points (:class:`AlgebraicPoint`); all local data is computed exactly over the
point's field, so an orbit is classified once for all its conjugates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import _upoly as U
from ._upoly import Q
from .elim import (
    Projection,
    Shear,
    _common_component_witness,
    common_zeros,
    project,
    repeated_factor,
    singular_locus,
)
from .errors import CommonComponent, NotSquarefree, PreconditionViolation, SingularPointError
from .numberfield import NFElem
from .points import AlgebraicPoint, ProjPoint, as_point, same_point
from .poly import MultiPoly, transform

UV = ("u", "v")


def _field_one(coords):
    for c in coords:
        if isinstance(c, NFElem):
            return c.field(1)
    return Q(1)


def frame_at(P):
    """A matrix whose third column is P and whose other columns are unit vectors."""
    p = list(as_point(P).field_coords())
    one = _field_one(p)
    zero = one * 0
    k = next(i for i, c in enumerate(p) if c)
    others = [i for i in range(3) if i != k]
    M = [[zero] * 3 for _ in range(3)]
    M[others[0]][0] = one
    M[others[1]][1] = one
    for r in range(3):
        M[r][2] = p[r]
    return M, others


def local_expansion(f: MultiPoly, P) -> MultiPoly:
    """f moved so that P sits at the origin of the affine chart (u, v)."""
    M, _ = frame_at(P)
    g = transform(f, M).subs({"z": 1})
    return MultiPoly(UV, {(e[0], e[1]): c for e, c in g.terms.items()})


def multiplicity_at(f: MultiPoly, P) -> int:
    """0 when P is off the curve, otherwise the order of f at P."""
    loc = local_expansion(f, P)
    if loc.is_zero():
        raise PreconditionViolation("zero form")
    return loc.lowest_degree()


def restrict_to_line(f: MultiPoly, P, D):
    """Dense coefficients (in s) of f(P + s*D) over the field of P and D."""
    pc = list(as_point(P).field_coords())
    dc = list(D)
    one = _field_one(pc + dc)
    s = MultiPoly.var("s", ("s",))
    images = [MultiPoly.constant(a * one, ("s",)) + s * (b * one) for a, b in zip(pc, dc)]
    g = f.compose(images, ("s",))
    deg = g.degree()
    out = [one * 0] * (deg + 1) if deg >= 0 else []
    for e, c in g.terms.items():
        out[e[0]] = c
    return U.trim(out)


def line_contact(f: MultiPoly, P, D) -> int | None:
    """Order of vanishing at P of f along the line through P with direction D; None if the line lies on f."""
    r = restrict_to_line(f, P, D)
    if not r:
        return None
    return next(i for i, c in enumerate(r) if c)


@dataclass
class TangentCone:
    local_form: MultiPoly  # binary form in (u, v)
    multiplicity: int
    profile: tuple  # root multiplicities, descending
    directions: list  # (global direction vector, multiplicity) per distinct root factor
    global_form: MultiPoly  # lines through P tangent to f, as a ternary form

    @property
    def distinct_tangents(self) -> int:
        return len(self.profile)


def _binary_profile(B: MultiPoly, r: int, one):
    """Root multiplicities of a binary form of degree r over the coefficient field.

    Returns (profile, [(root (u0, v0) or factor, multiplicity, degree)]).
    """
    b = [one * 0] * (r + 1)
    for e, c in B.terms.items():
        b[e[0]] = c
    b = U.trim(b)
    deficit = r - (len(b) - 1)
    prof = []
    roots = []
    if deficit:
        prof.append(deficit)
        roots.append(((one, one * 0), deficit, 1))
    if len(b) > 1:
        for fac, m in U.squarefree(b):
            k = len(fac) - 1
            prof.extend([m] * k)
            if k == 1:
                roots.append(((-fac[0], one), m, 1))
            else:
                roots.append((fac, m, k))
    return tuple(sorted(prof, reverse=True)), roots


def tangent_cone(f: MultiPoly, P) -> TangentCone:
    """Initial form of f at P, its root profile and the global tangent lines."""
    P = as_point(P)
    loc = local_expansion(f, P)
    r = loc.lowest_degree()
    if r < 1:
        raise PreconditionViolation("point is not on the curve")
    B = loc.homogeneous_part(r)
    M, others = frame_at(P)
    one = _field_one(list(P.field_coords()))
    prof, roots = _binary_profile(B, r, one)
    dirs = []
    for root, m, k in roots:
        if k == 1:
            u0, v0 = root
            dirs.append((tuple(M[i][0] * u0 + M[i][1] * v0 for i in range(3)), m))
        else:
            dirs.append((None, m))
    return TangentCone(B, r, prof, dirs, polar_cone(f, P, r))


def polar_cone(f: MultiPoly, P, r: int) -> MultiPoly:
    """Coefficient of s^r in f(P + s*X): the tangent cone at P as a form in X."""
    pc = list(as_point(P).field_coords())
    vars5 = ("x", "y", "z", "s")
    s = MultiPoly.var("s", vars5)
    gens = MultiPoly.gens(vars5)
    images = [MultiPoly.constant(c, vars5) + s * gens[i] for i, c in enumerate(pc)]
    g = f.compose(images, vars5)
    out = {}
    for e, c in g.terms.items():
        if e[3] == r:
            out[e[:3]] = c
    return MultiPoly(("x", "y", "z"), out)


def tangent_line(f: MultiPoly, P) -> MultiPoly:
    """x f_x(P) + y f_y(P) + z f_z(P) at a smooth point."""
    c = as_point(P).field_coords()
    gens = MultiPoly.gens(f.variables)
    acc = MultiPoly(f.variables)
    for g, v in zip(gens, f.variables):
        val = f.partial(v).evaluate(c)
        if val:
            acc = acc + g * val
    return acc


NODE, CUSP, ORDINARY, NON_ORDINARY = "node", "cusp", "ordinary_rfold", "non_ordinary"


@dataclass
class SingularPoint:
    point: object
    multiplicity: int
    tangent_cone: MultiPoly
    distinct_tangents: int
    kind: str
    profile: tuple = ()
    tangent_contact: int | None = None  # contact of the tangent line for r=2, one tangent

    @property
    def orbit_size(self) -> int:
        return self.point.degree

    @property
    def is_simple_cusp(self) -> bool:
        """An ordinary cusp: double point, one tangent, meeting it with contact 3."""
        return self.kind == CUSP and self.tangent_contact == 3

    @property
    def is_ordinary(self) -> bool:
        return self.distinct_tangents == self.multiplicity

    def as_dict(self, dps: int = 15):
        from .points import format_numeric

        d = {
            "point": str(self.point),
            "orbit_size": self.orbit_size,
            "multiplicity": self.multiplicity,
            "distinct_tangents": self.distinct_tangents,
            "kind": self.kind,
            "profile": list(self.profile),
        }
        if self.tangent_contact is not None:
            d["tangent_contact"] = self.tangent_contact
        if isinstance(self.point, AlgebraicPoint):
            d["numeric"] = [[format_numeric(c, dps) for c in pt] for pt in self.point.numeric(dps + 5)]
        return d


def analyse_point(f: MultiPoly, P) -> SingularPoint:
    tc = tangent_cone(f, P)
    r = tc.multiplicity
    dt = tc.distinct_tangents
    if r == 2 and dt == 2:
        kind = NODE
    elif r == 2 and dt == 1:
        kind = CUSP
    elif dt == r:
        kind = ORDINARY
    else:
        kind = NON_ORDINARY
    contact = None
    if kind == CUSP:
        D = tc.directions[0][0]
        contact = line_contact(f, P, D)
    return SingularPoint(as_point(P), r, tc.local_form, dt, kind, tc.profile, contact)


def require_squarefree(f: MultiPoly):
    rep = repeated_factor(f)
    if rep is not None:
        raise NotSquarefree(f"factor {rep[0]} occurs with multiplicity {rep[1]}", witness=rep[0])


def classify_singularities(f: MultiPoly, seed: int = 0) -> list:
    """All singular points of a squarefree curve, rational ones first."""
    require_squarefree(f)
    loc = singular_locus(f, seed)
    out = [analyse_point(f, p) for p in loc.points]
    out.sort(key=lambda s: (s.orbit_size, s.point.coords if isinstance(s.point, ProjPoint) else ()))
    return out


def hessian_matrix(f: MultiPoly):
    v = f.variables
    return [[f.partial(a).partial(b) for b in v] for a in v]


def hessian_form(f: MultiPoly) -> MultiPoly:
    h = hessian_matrix(f)
    return (
        h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
        - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
        + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0])
    )


def is_flex(f: MultiPoly, P) -> bool:
    """Whether the tangent at the smooth point P has contact at least 3, decided by
    the Hessian; lines count as flexes everywhere, conics nowhere."""
    P = as_point(P)
    m = multiplicity_at(f, P)
    if m == 0:
        raise PreconditionViolation("point is not on the curve")
    if m >= 2:
        raise SingularPointError(f"{P} has multiplicity {m}")
    n = f.degree()
    if n == 1:
        return True
    if n == 2:
        return False
    return not hessian_form(f).evaluate(P.field_coords())


def tangent_contact(f: MultiPoly, P) -> int | None:
    """Contact order of the tangent line at a smooth point (None if the tangent is a component)."""
    return line_contact(f, P, _tangent_direction(f, P))


def _tangent_direction(f, P):
    c = list(as_point(P).field_coords())
    grad = [f.partial(v).evaluate(c) for v in f.variables]
    # a point on the tangent line other than P: cross product of grad with P
    d = [grad[1] * c[2] - grad[2] * c[1], grad[2] * c[0] - grad[0] * c[2], grad[0] * c[1] - grad[1] * c[0]]
    if not any(d):
        raise SingularPointError("gradient vanishes or is parallel to the point")
    return d


# ---------------------------------------------------------------------------
# intersections


@dataclass
class IntersectionRecord:
    point: object
    local_multiplicity: int

    @property
    def orbit_size(self) -> int:
        return self.point.degree

    @property
    def total(self) -> int:
        return self.local_multiplicity * self.orbit_size

    def as_dict(self, dps: int = 15):
        from .points import format_numeric

        d = {"point": str(self.point), "orbit_size": self.orbit_size, "local_multiplicity": self.local_multiplicity}
        if isinstance(self.point, AlgebraicPoint):
            d["numeric"] = [[format_numeric(c, dps) for c in pt] for pt in self.point.numeric(dps + 5)]
        return d


def intersect(f: MultiPoly, g: MultiPoly, seed: int = 0) -> list:
    """Every intersection point of two curves without common component, with multiplicity."""
    if f.degree() < 1 or g.degree() < 1:
        raise PreconditionViolation("curves must have positive degree")
    pts, _ = common_zeros(f, g, seed)
    recs = [IntersectionRecord(p, m) for p, m in pts]
    total = sum(r.total for r in recs)
    if total != f.degree() * g.degree():
        raise AssertionError(f"Bezout count {total} != {f.degree() * g.degree()}")
    recs.sort(key=lambda r: (r.orbit_size, r.point.coords if isinstance(r.point, ProjPoint) else (), -r.local_multiplicity))
    return recs


def _sheared_x(sh: Shear, P):
    X, Y, Z = P.field_coords()
    xs = X - Y * sh.a
    zs = Z - Y * sh.b
    if not zs:
        return None
    return xs / zs


def intersection_multiplicity(f: MultiPoly, g: MultiPoly, P, seed: int = 0) -> int:
    """Local intersection number of f and g at P via a verified generic projection."""
    P = as_point(P)
    if f.evaluate(P.field_coords()) or g.evaluate(P.field_coords()):
        raise PreconditionViolation(f"{P} is not on both curves")

    def select(sh, q):
        x = _sheared_x(sh, P)
        return x is not None and not U.evaluate(q, x)

    rng = random.Random(seed)
    for _ in range(4):
        try:
            proj = project(f, g, rng, select=select, check_infinity=False)
        except CommonComponent:
            raise
        x = _sheared_x(proj.shear, P)
        if x is None:
            # P lies on the line at infinity of this frame; require a finite fiber
            continue
        hits = [e for q, e in proj.factors]
        if hits:
            return hits[0]
    raise CommonComponent("no finite generic projection through the point", witness=_common_component_witness(f, g))
