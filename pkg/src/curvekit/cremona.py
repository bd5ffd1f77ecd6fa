"""Standard quadratic transformation, homaloidal arithmetic, images of curves
under nets, and resolution of singularities by repeated quadratic maps."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import _upoly as U
from ._implicit import image_curve
from ._upoly import Q
from .errors import (
    CollapsedImage,
    CommonComponent,
    EdgeComponent,
    IterationCap,
    NonRationalCenter,
    PreconditionViolation,
    TriangleDegenerate,
)
from .linalg import det, inverse, rank
from .local import classify_singularities, intersect, multiplicity_at, require_squarefree, restrict_to_line
from .points import ProjPoint, as_point
from .poly import MultiPoly, monomials, transform

VERTICES = (ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1))


@dataclass(frozen=True)
class QuadraticFrame:
    """Fundamental triangle plus the matrix sending its vertices to the coordinate points."""

    fundamental_triangle: tuple
    change_of_coords: tuple  # rows of a 3x3 rational matrix

    @classmethod
    def from_points(cls, X, Y, Z) -> "QuadraticFrame":
        pts = tuple(as_point(p) for p in (X, Y, Z))
        if not all(isinstance(p, ProjPoint) for p in pts):
            raise PreconditionViolation("frame vertices must be rational")
        A = [[Q(pts[j].coords[i]) for j in range(3)] for i in range(3)]
        if det(A) == 0:
            raise TriangleDegenerate("vertices are collinear", witness=pts)
        M = inverse(A)
        return cls(pts, tuple(tuple(r) for r in M))

    @classmethod
    def standard(cls) -> "QuadraticFrame":
        return cls.from_points(*VERTICES)

    @property
    def vertex_matrix(self):
        """Columns are the triangle's vertices (inverse of change_of_coords)."""
        return [[Q(self.fundamental_triangle[j].coords[i]) for j in range(3)] for i in range(3)]

    def to_frame(self, f: MultiPoly) -> MultiPoly:
        return transform(f, self.vertex_matrix)

    def from_frame(self, g: MultiPoly) -> MultiPoly:
        return transform(g, [list(r) for r in self.change_of_coords])

    def as_dict(self):
        return {
            "triangle": [str(p) for p in self.fundamental_triangle],
            "change_of_coords": [[str(c) for c in r] for r in self.change_of_coords],
        }


@dataclass
class ResolutionStep:
    frame: QuadraticFrame
    before: MultiPoly
    after: MultiPoly
    multiplicities_at_triangle: tuple
    after_multiplicities: tuple = ()
    center: object = None

    def as_dict(self):
        return {
            "frame": self.frame.as_dict(),
            "center": None if self.center is None else str(self.center),
            "before": str(self.before),
            "after": str(self.after),
            "degree_before": self.before.degree(),
            "degree_after": self.after.degree(),
            "multiplicities_at_triangle": list(self.multiplicities_at_triangle),
            "after_multiplicities": list(self.after_multiplicities),
        }


def std_quadratic_transform(f: MultiPoly, frame: QuadraticFrame | None = None) -> ResolutionStep:
    """Apply x':y':z' = yz:xz:xy in the given frame and strip the exceptional lines.

    The result is expressed in the original coordinates, so the same frame
    applied twice gives back f up to a scalar.
    """
    frame = frame or QuadraticFrame.standard()
    n = f.degree()
    g = frame.to_frame(f)
    gens = MultiPoly.gens(g.variables)
    for i, e in enumerate(gens):
        if e.divides(g):
            raise EdgeComponent(f"edge {'xyz'[i]} = 0 of the triangle is a component", witness=i)
    a, b, c = (multiplicity_at(g, v) for v in VERTICES)
    x, y, z = gens
    h = g.compose([y * z, x * z, x * y], g.variables)
    h = h.exact_div(x**a * y**b * z**c)
    after = frame.from_frame(h).primitive()
    n2 = 2 * n - a - b - c
    mults = tuple(multiplicity_at(h, v) for v in VERTICES)
    assert after.degree() == n2
    assert mults == (n - b - c, n - a - c, n - a - b), mults
    return ResolutionStep(frame, f, after, (a, b, c), mults)


def homaloidal_check(n: int, multiplicities) -> bool:
    """Both base-point identities of a homaloidal net of degree n."""
    if n < 1:
        raise PreconditionViolation("n must be at least 1")
    ms = list(multiplicities)
    if any(m < 0 for m in ms):
        return False
    sq = sum(m * m for m in ms) == n * n - 1
    lin = sum(m * (m + 1) for m in ms) == n * (n + 3) - 4
    return sq and lin


def net_image(f: MultiPoly, L: MultiPoly, M: MultiPoly, N: MultiPoly, seed: int = 0) -> MultiPoly:
    """Image of f under (L : M : N), as a form in x, y, z."""
    k = L.degree()
    if M.degree() != k or N.degree() != k:
        raise PreconditionViolation("net members must have the same degree")
    if not all(p.is_homogeneous() for p in (L, M, N)):
        raise PreconditionViolation("net members must be forms")
    mons = monomials(k, 3)
    if rank([[p.coeff(e) for e in mons] for p in (L, M, N)], len(mons)) < 3:
        raise PreconditionViolation("net members are linearly dependent")
    n = f.degree()
    G, D, _ = image_curve(f, [L, M, N], n * k, seed)
    if G is None:
        raise PreconditionViolation("no image relation found up to the Bezout bound")
    moving = _moving_intersections(f, (L, M, N), seed)
    if moving != D:
        raise CollapsedImage(
            f"the map has degree {moving // D} on f: image of degree {D} instead of {moving}", witness=G
        )
    return G


def _moving_intersections(f: MultiPoly, net, seed: int) -> int:
    """Points of f on a generic net member, base points of the net excluded."""
    rng = random.Random(seed)
    for _ in range(20):
        lam = [rng.randint(-50, 50) for _ in net]
        member = sum((g * c for g, c in zip(net, lam)), MultiPoly(f.variables))
        if member.is_zero():
            continue
        try:
            recs = intersect(f, member, seed)
        except CommonComponent:
            continue
        total = 0
        for rec in recs:
            c = rec.point.field_coords()
            if any(g.evaluate(c) for g in net):
                total += rec.local_multiplicity * rec.point.degree
        return total
    raise PreconditionViolation("every sampled net member shares a component with f")


# ---------------------------------------------------------------------------
# resolution


def _squarefree_dense(p) -> bool:
    return len(U.gcd(p, U.derivative(p))) <= 1


def _transversal_from(f: MultiPoly, P, D, r: int) -> bool:
    """Line P + sD meets f at P with multiplicity exactly r and simply elsewhere."""
    res = restrict_to_line(f, P, D)
    if len(res) <= r or not res[r]:
        return False
    if any(res[:r]):
        return False
    rest = res[r:]
    return _squarefree_dense(rest) and rest[0] != 0


def _choose_frame(f: MultiPoly, P: ProjPoint, r: int, rng: random.Random, tries: int = 200) -> QuadraticFrame:
    n = f.degree()
    span = 3
    for t in range(tries):
        if t and t % 40 == 0:
            span += 3
        X = tuple(rng.randint(-span, span) for _ in range(3))
        Y = tuple(rng.randint(-span, span) for _ in range(3))
        if not any(X) or not any(Y):
            continue
        if not f.evaluate([Q(c) for c in X]) or not f.evaluate([Q(c) for c in Y]):
            continue
        try:
            frame = QuadraticFrame.from_points(ProjPoint(*X), ProjPoint(*Y), P)
        except TriangleDegenerate:
            continue
        if not (_transversal_from(f, P, X, r) and _transversal_from(f, P, Y, r)):
            continue
        if not _transversal_from(f, ProjPoint(*X), Y, 0) or len(restrict_to_line(f, ProjPoint(*X), Y)) != n + 1:
            continue
        return frame
    raise IterationCap("no generic auxiliary vertices found")


@dataclass
class Resolution:
    steps: list = field(default_factory=list)
    final: MultiPoly | None = None

    def as_dict(self):
        return {"steps": [s.as_dict() for s in self.steps], "final": str(self.final)}


def resolve(f: MultiPoly, seed: int = 0, max_steps: int = 16) -> Resolution:
    """Quadratic transformations centred at non-ordinary points until all are ordinary."""
    require_squarefree(f)
    rng = random.Random(seed)
    cur = f.primitive()
    steps = []
    for _ in range(max_steps + 1):
        sings = classify_singularities(cur, seed)
        bad = [s for s in sings if not s.is_ordinary]
        if not bad:
            return Resolution(steps, cur)
        if len(steps) == max_steps:
            break
        rational = [s for s in bad if isinstance(s.point, ProjPoint)]
        if not rational:
            raise NonRationalCenter(
                f"non-ordinary singularity at {bad[0].point} is not defined over Q", witness=bad[0]
            )
        s = rational[0]
        frame = _choose_frame(cur, s.point, s.multiplicity, rng)
        step = std_quadratic_transform(cur, frame)
        step.center = s.point
        steps.append(step)
        cur = step.after
    raise IterationCap(f"resolution did not finish in {max_steps} steps")
