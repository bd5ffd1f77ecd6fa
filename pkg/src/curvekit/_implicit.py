"""Implicit equation of the image of a plane curve under a rational map (L:M:N).

The image of degree D is the generator of the kernel of G -> G(L, M, N) mod f
on forms of degree D.  Reduction mod f happens in Q[x][y]/(f(x, y, 1)) after
a shear that makes f monic in y, so no Groebner machinery is needed.
"""

from __future__ import annotations

import random

from . import _upoly as U
from ._upoly import Q
from .elim import random_shear
from .errors import CollapsedImage, ShearExhausted
from .linalg import nullspace
from .poly import MultiPoly, monomials


def _to_rows(p: MultiPoly, n: int):
    """Dense representation: list (index = y power) of dense x-polys, from p(x, y, 1)."""
    pa = p.subs({"z": 1})
    out = [[] for _ in range(max(pa.degree_in("y") + 1, n))]
    for e, c in pa.terms.items():
        row = out[e[1]]
        if len(row) <= e[0]:
            row.extend([Q(0)] * (e[0] + 1 - len(row)))
        row[e[0]] = row[e[0]] + c
    return [U.trim(r) for r in out]


class _Quotient:
    """Arithmetic in Q[x][y] / (F), F monic in y of degree n."""

    def __init__(self, F):
        self.n = len(F) - 1
        lead = F[-1][0]
        self.F = [U.scale(c, 1 / lead) for c in F]

    def reduce(self, a):
        a = [list(c) for c in a]
        n = self.n
        for k in range(len(a) - 1, n - 1, -1):
            c = a[k]
            if not c:
                continue
            for j in range(n):
                if self.F[j]:
                    a[k - n + j] = U.sub(a[k - n + j], U.mul(c, self.F[j]))
            a[k] = []
        out = a[:n] + [[] for _ in range(n - len(a[:n]))]
        return [U.trim(c) for c in out]

    def mul(self, a, b):
        out = [[] for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = U.add(out[i + j], U.mul(x, y))
        return self.reduce(out)


def image_curve(f: MultiPoly, maps, max_degree: int, seed: int = 0, min_degree: int = 1):
    """Return (G, D): the image of f under (L:M:N) as a form of degree D in (x, y, z).

    Raises CollapsedImage if the image is a point, and returns (None, None)
    when no relation exists up to ``max_degree``.
    """
    rng = random.Random(seed)
    for attempt in range(10):
        sh = random_shear(rng, attempt)
        if not f.evaluate((sh.a, Q(1), sh.b)):
            continue
        fs = sh.apply(f)
        F = _to_rows(fs, 0)
        if len(F) - 1 != f.degree() or len(F[-1]) != 1:
            continue
        break
    else:
        raise ShearExhausted("no shear making the curve monic")
    ring = _Quotient(F)
    n = ring.n
    gens = [ring.reduce(_to_rows(sh.apply(m), n)) for m in maps]
    powers = {(0, 0, 0): [[Q(1)]] + [[] for _ in range(n - 1)]}
    for D in range(1, max_degree + 1):
        mons = monomials(D, 3)
        cols = []
        for e in mons:
            if e not in powers:
                k = next(i for i in range(3) if e[i])
                prev = list(e)
                prev[k] -= 1
                powers[e] = ring.mul(powers[tuple(prev)], gens[k])
            cols.append(powers[e])
        if D < min_degree:
            continue
        # rows indexed by (y power, x power)
        width = {}
        for col in cols:
            for j, c in enumerate(col):
                width[j] = max(width.get(j, 0), len(c))
        rows = []
        for j in sorted(width):
            for i in range(width[j]):
                rows.append([col[j][i] if j < len(col) and i < len(col[j]) else Q(0) for col in cols])
        rows = [r for r in rows if any(r)]
        ker = nullspace(rows, len(mons)) if rows else [[Q(1) if i == j else Q(0) for i in range(len(mons))] for j in range(len(mons))]
        if not ker:
            continue
        if D == 1 and len(ker) >= 2:
            raise CollapsedImage("the map collapses the curve to a point")
        vec = ker[0]
        G = MultiPoly(("x", "y", "z"), {e: c for e, c in zip(mons, vec)})
        return G.primitive(), D, len(ker)
    return None, None, 0
