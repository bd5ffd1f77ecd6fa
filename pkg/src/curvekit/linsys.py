"""Linear systems of plane curves defined by base points, the ninth point of a
cubic pencil, Noether's decomposition f = A*phi + B*psi, and fixed/double
point counts for correspondences and involutions on a line."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import _upoly as U
from ._upoly import Q
from .elim import locate_roots
from .errors import (
    CommonComponent,
    DependentConditions,
    DiagonalContained,
    HypothesisFailed,
    NoSolution,
    PreconditionViolation,
    ProportionalForms,
)
from .linalg import nullspace, rank, solve
from .local import intersect, multiplicity_at
from .numberfield import NFElem
from .points import AlgebraicPoint, ProjPoint, as_point
from .poly import XYZ, MultiPoly, from_coefficients, monomials, n_monomials


@dataclass(frozen=True)
class LinearCondition:
    point: object
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise PreconditionViolation("multiplicity must be at least 1")
        object.__setattr__(self, "point", as_point(self.point))

    @property
    def count(self) -> int:
        """Number of rational linear equations imposed."""
        m = self.multiplicity
        return self.point.degree * m * (m + 1) // 2


@dataclass
class LinearSystemReport:
    degree: int
    conditions: list
    virtual_dim: int
    effective_dim: int
    superabundance: int
    basis: list = field(default_factory=list)

    def as_dict(self):
        return {
            "degree": self.degree,
            "conditions": [{"point": str(c.point), "multiplicity": c.multiplicity} for c in self.conditions],
            "virtual_dim": self.virtual_dim,
            "effective_dim": self.effective_dim,
            "superabundance": self.superabundance,
            "basis": [str(b) for b in self.basis],
        }


def _derivative_value(e, alpha, P):
    """d^alpha (x^e) evaluated at P, up to the factorials common to the row."""
    c = Q(1)
    for ei, ai in zip(e, alpha):
        if ai > ei:
            return 0
        for k in range(ai):
            c *= ei - k
    val = c
    for ei, ai, p in zip(e, alpha, P):
        val = val * p ** (ei - ai)
    return val


def _split_rows(row, k):
    """A row over Q[t]/(q) as k rational rows (coefficients of 1, t, ..., t^(k-1))."""
    out = [[Q(0)] * len(row) for _ in range(k)]
    for j, v in enumerate(row):
        if isinstance(v, NFElem):
            for i, c in enumerate(v.c):
                out[i][j] = Q(c)
        else:
            out[0][j] = Q(v)
    return out


def condition_rows(n: int, cond: LinearCondition):
    """Rational equations on the coefficients of a degree-n form (monomials in grlex order)."""
    mons = monomials(n, 3)
    P = cond.point.field_coords()
    m = cond.multiplicity
    rows = []
    for alpha in _exponents(m - 1):
        row = [_derivative_value(e, alpha, P) for e in mons]
        if isinstance(cond.point, AlgebraicPoint):
            rows.extend(_split_rows(row, cond.point.degree))
        else:
            rows.append([Q(v) for v in row])
    return rows


def _exponents(k):
    out = []
    for combo in combinations_with_replacement(range(3), k):
        e = [0, 0, 0]
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _as_condition(c) -> LinearCondition:
    """Accept a LinearCondition, a (point, multiplicity) pair, or a bare point."""
    if isinstance(c, LinearCondition):
        return c
    if isinstance(c, (tuple, list)) and len(c) == 2 and isinstance(c[1], int):
        return LinearCondition(c[0], c[1])
    return LinearCondition(c)


def system_dimension(n: int, conditions) -> LinearSystemReport:
    """Virtual and effective dimension of degree-n curves satisfying the conditions."""
    if n < 0:
        raise PreconditionViolation("degree must be nonnegative")
    conds = [_as_condition(c) for c in conditions]
    N = n_monomials(n, 3)
    rows = [r for c in conds for r in condition_rows(n, c)]
    rk = rank(rows, N) if rows else 0
    virtual = n * (n + 3) // 2 - sum(c.count for c in conds)
    effective = N - rk - 1
    basis = [from_coefficients(v, n) for v in nullspace(rows, N)] if effective >= 0 else []
    return LinearSystemReport(n, conds, virtual, effective, effective - virtual, basis)


def ninth_base_point(eight, seed: int = 0):
    """The ninth base point of the pencil of cubics through eight points."""
    pts = [as_point(p) for p in eight]
    if sum(p.degree for p in pts) != 8:
        raise PreconditionViolation("need eight points")
    rep = system_dimension(3, [LinearCondition(p) for p in pts])
    if rep.effective_dim != 1:
        raise DependentConditions(
            f"the points impose {9 - rep.effective_dim} conditions on cubics, not 8", witness=rep.effective_dim
        )
    C1, C2 = rep.basis
    try:
        recs = intersect(C1, C2, seed)
    except CommonComponent as exc:
        raise DependentConditions("the cubic pencil has a fixed component", witness=exc.witness) from exc
    left = {}
    for r in recs:
        left[r.point] = left.get(r.point, 0) + r.local_multiplicity
    for p in pts:
        key = next((q for q in left if q.degree == p.degree and _same(q, p)), None)
        if key is None or left[key] == 0:
            raise AssertionError(f"{p} is not a base point of the pencil")
        left[key] -= 1
    rest = [q for q, m in left.items() for _ in range(m)]
    assert len(rest) == 1 and rest[0].degree == 1
    return rest[0]


def _same(p, q) -> bool:
    if isinstance(p, ProjPoint) or isinstance(q, ProjPoint):
        return p == q
    return _numeric_orbit_equal(p, q)


def _numeric_orbit_equal(p, q) -> bool:
    a, b = p.numeric(30), q.numeric(30)
    return all(any(max(abs(x - y) for x, y in zip(u, w)) < 1e-20 for w in b) for u in a)


# ---------------------------------------------------------------------------


@dataclass
class NoetherDecomposition:
    A: MultiPoly
    B: MultiPoly
    residual_freedom: int

    def as_dict(self):
        return {"A": str(self.A), "B": str(self.B), "residual_freedom": self.residual_freedom}


def noether_hypotheses(f: MultiPoly, phi: MultiPoly, psi: MultiPoly, seed: int = 0):
    """Check f against each point of phi.psi: multiplicity >= a+b-1 where phi, psi meet
    without common tangents.  Returns the points where only the solve can decide."""
    try:
        recs = intersect(phi, psi, seed)
    except CommonComponent as exc:
        raise PreconditionViolation("phi and psi share a component", witness=exc.witness) from exc
    undecided = []
    for r in recs:
        a = multiplicity_at(phi, r.point)
        b = multiplicity_at(psi, r.point)
        m = multiplicity_at(f, r.point) if f else 10**9
        if r.local_multiplicity == a * b:
            if m < a + b - 1:
                raise HypothesisFailed(
                    f"f has multiplicity {m} at {r.point}, needs {a + b - 1}", witness=r.point
                )
        else:
            undecided.append(r.point)
    return undecided


def noether_decompose(f: MultiPoly, phi: MultiPoly, psi: MultiPoly, seed: int = 0) -> NoetherDecomposition:
    n, p, q = f.degree(), phi.degree(), psi.degree()
    if not all(g.is_homogeneous() for g in (f, phi, psi)):
        raise PreconditionViolation("inputs must be forms")
    undecided = noether_hypotheses(f, phi, psi, seed)
    da, db = n - p, n - q
    ma = monomials(da, 3) if da >= 0 else []
    mb = monomials(db, 3) if db >= 0 else []
    target = monomials(n, 3)
    idx = {e: i for i, e in enumerate(target)}
    cols = []
    for src, g in ((ma, phi), (mb, psi)):
        for e in src:
            col = [Q(0)] * len(target)
            for ge, c in g.terms.items():
                col[idx[tuple(a + b for a, b in zip(e, ge))]] += c
            cols.append(col)
    rows = [[col[i] for col in cols] for i in range(len(target))]
    rhs = [f.coeff(e) for e in target]
    if not cols:
        sol, ker = (None, None) if any(rhs) else ([], [])
    else:
        sol, ker = solve(rows, rhs)
    if sol is None:
        if undecided:
            raise HypothesisFailed(
                f"f is not in (phi, psi): fails at the tangential intersection {undecided[0]}", witness=undecided[0]
            )
        raise NoSolution("hypotheses hold but the linear system has no solution")
    A = MultiPoly(XYZ, {e: c for e, c in zip(ma, sol[: len(ma)])})
    B = MultiPoly(XYZ, {e: c for e, c in zip(mb, sol[len(ma):])})
    assert A * phi + B * psi == f
    return NoetherDecomposition(A, B, len(ker))


def _c(k: int) -> int:
    return (k + 1) * (k + 2) // 2 if k >= 0 else 0


def regularity_threshold(p: int, q: int, n: int):
    """(regular, superabundance) of degree-n curves through the pq points phi_p . psi_q.

    Uses the exact count of forms in (phi, psi) of degree n; for n >= max(p, q) - 2
    this equals (p+q-n-1)(p+q-n-2)/2 when positive.
    """
    if p < 1 or q < 1 or n < 0:
        raise PreconditionViolation("need p, q >= 1 and n >= 0")
    effective = _c(n - p) + _c(n - q) - _c(n - p - q) - 1
    virtual = n * (n + 3) // 2 - p * q
    s = effective - virtual
    return s == 0, s


def superabundance_formula(p: int, q: int, n: int) -> int:
    k = p + q - n - 1
    return k * (k - 1) // 2 if k >= 2 else 0


# ---------------------------------------------------------------------------
# correspondences on a line


def chasles_fixed_points(corr: MultiPoly, bidegree=None):
    """United points of the correspondence corr(x, y) = 0 of bidegree (m, n): (m + n, RootSet)."""
    xv, yv = corr.variables[0], corr.variables[1]
    m = corr.degree_in(xv) if bidegree is None else bidegree[0]
    n = corr.degree_in(yv) if bidegree is None else bidegree[1]
    diag = corr.subs({yv: MultiPoly.var(xv, corr.variables)})
    if diag.is_zero():
        raise DiagonalContained("the correspondence contains the identity", witness=corr)
    coeffs = [Q(0)] * (diag.degree() + 1)
    i = corr.variables.index(xv)
    for e, c in diag.terms.items():
        coeffs[e[i]] += c
    rs = locate_roots(coeffs, degree=m + n)
    return m + n, rs


def jacobian_binary(f: MultiPoly, phi: MultiPoly) -> MultiPoly:
    a, b = f.variables[0], f.variables[1]
    return f.partial(a) * phi.partial(b) - f.partial(b) * phi.partial(a)


def involution_double_points(f: MultiPoly, phi: MultiPoly):
    """Double points of the pencil f + lam*phi of binary forms: (2(n-1), RootSet, Jacobian)."""
    n = f.degree()
    if phi.degree() != n or not f.is_homogeneous() or not phi.is_homogeneous():
        raise PreconditionViolation("need two binary forms of the same degree")
    if f.proportional(phi):
        raise ProportionalForms("the forms are proportional")
    J = jacobian_binary(f, phi)
    a, b = J.variables[0], J.variables[1]
    coeffs = [Q(0)] * (2 * (n - 1) + 1)
    ia = J.variables.index(a)
    for e, c in J.terms.items():
        coeffs[e[ia]] += c
    rs = locate_roots(U.trim(coeffs), degree=2 * (n - 1))
    return 2 * (n - 1), rs, J
