"""Points of projective space: rational points and Galois orbits of algebraic points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import mpmath

from ._upoly import Q
from .numberfield import NFElem, NumberField


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A rational projective point, stored as a primitive integer vector whose
    first nonzero entry is positive (so equal points compare equal)."""

    coords: tuple

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        object.__setattr__(self, "coords", _normalise_rational(coords))

    @property
    def degree(self) -> int:
        return 1

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def rationals(self):
        return tuple(Q(c) for c in self.coords)

    def field_coords(self):
        return self.rationals()

    def numeric(self, dps: int = 30):
        with mpmath.workdps(dps):
            vals = [mpmath.mpf(c) for c in self.coords]
            return [tuple(mpmath.mpc(v) for v in vals)]

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjPoint{self.coords}"


def _normalise_rational(coords):
    vals = [Q(c) if not isinstance(c, Fraction) else Q(c.numerator, c.denominator) for c in coords]
    if not any(vals):
        raise ValueError("all coordinates zero")
    den = 1
    for v in vals:
        den = lcm(den, int(v.denominator))
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class AlgebraicPoint:
    """A Galois orbit of ``field.degree`` conjugate points, stored exactly.

    Coordinates are number-field elements scaled so that the first nonzero
    one equals 1; the orbit is the set of images under the embeddings of the
    field.
    """

    field: NumberField
    coords: tuple

    @classmethod
    def make(cls, field: NumberField, coords):
        coords = [field(c) for c in coords]
        k = next(i for i, c in enumerate(coords) if c)
        inv = coords[k].inverse()
        coords = tuple(c * inv for c in coords)
        if all(c.is_rational() for c in coords):
            return ProjPoint(*[c.rational() for c in coords])
        return cls(field, coords)

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def field_coords(self):
        return self.coords

    def numeric(self, dps: int = 30):
        """Numeric conjugates, each scaled so its largest coordinate is 1."""
        out = []
        with mpmath.workdps(dps + 10):
            for r in self.field.roots(dps):
                vals = [c.numeric(r) for c in self.coords]
                k = max(range(len(vals)), key=lambda i: abs(vals[i]))
                out.append(tuple(mpmath.mpc(v) / vals[k] for v in vals))
        return out

    def __str__(self):
        return f"<{self.degree} conjugate points over Q[t]/({_fmt_poly(self.field.modulus)})>"


def _fmt_poly(coeffs):
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        else:
            s = f"{c}*{mono}" if mono else str(c)
        parts.append(s)
    return " + ".join(parts).replace("+ -", "- ")


def same_point(p, q) -> bool:
    """Exact equality of points given in field coordinates (same field or rational)."""
    a, b = p.field_coords(), q.field_coords()
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i] * b[j] - a[j] * b[i]:
                return False
    return True


def as_point(p):
    if isinstance(p, (ProjPoint, AlgebraicPoint)):
        return p
    return ProjPoint(*p)


def format_numeric(z, digits: int = 15) -> str:
    z = mpmath.mpc(z)
    tol = mpmath.mpf(10) ** (-digits) * max(1, abs(z))
    if abs(z.real) < tol:
        z = mpmath.mpc(0, z.imag)
    if abs(z.imag) < tol:
        z = mpmath.mpc(z.real, 0)
    re_ = mpmath.nstr(z.real, digits)
    if z.imag == 0:
        return re_
    return f"{re_}{'+' if z.imag >= 0 else '-'}{mpmath.nstr(abs(z.imag), digits)}j"


__all__ = ["ProjPoint", "AlgebraicPoint", "NFElem", "same_point", "as_point", "format_numeric"]
