"""Simple algebraic number fields Q[t]/(q) with q irreducible over Q.

Used to carry exact coordinates of non-rational points: a Galois orbit of
points is stored once, with coordinates given as polynomials in a root of q.
"""

from __future__ import annotations

import flint
import mpmath

from . import _upoly as U
from ._upoly import Q


class NumberField:
    def __init__(self, modulus):
        mod = U.monic([Q(c) for c in modulus])
        if len(mod) < 2:
            raise ValueError("modulus must have positive degree")
        self.modulus = tuple(mod)
        self.fmod = U._to_f(mod)
        self.degree = len(mod) - 1
        self._roots = {}

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({[str(c) for c in self.modulus]})"

    def __call__(self, value) -> "NFElem":
        if isinstance(value, NFElem):
            return value
        if isinstance(value, (list, tuple)):
            return NFElem(self, U._to_f(U.trim([Q(c) for c in value])) % self.fmod)
        return NFElem(self, U.trim([Q(value)]))

    def gen(self) -> "NFElem":
        return self([0, 1])

    def roots(self, dps: int = 30):
        """Numeric roots of the modulus, sorted for determinism."""
        if dps not in self._roots:
            self._roots[dps] = numeric_roots(list(self.modulus), dps)
        return self._roots[dps]


def numeric_roots(coeffs, dps: int):
    """All complex roots of a squarefree rational polynomial, deterministic order."""
    with mpmath.workdps(dps + 20):
        hi = [mpmath.mpf(int(Q(c).numerator)) / int(Q(c).denominator) for c in reversed(coeffs)]
        if len(hi) == 2:
            roots = [-hi[1] / hi[0]]
        else:
            roots = mpmath.polyroots(hi, maxsteps=400, extraprec=4 * dps + 100)
        roots = [mpmath.mpc(r) for r in roots]
        roots.sort(key=lambda z: (round(float(z.real), 12), round(float(z.imag), 12)))
    return roots


class NFElem:
    """Element of Q[t]/(q), held as a FLINT rational polynomial of degree < deg q."""

    __slots__ = ("field", "_p", "_c")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self._p = coeffs if isinstance(coeffs, flint.fmpq_poly) else U._to_f(U.trim(coeffs))
        self._c = None

    @property
    def c(self):
        """Coefficients (lowest first) as rationals."""
        if self._c is None:
            self._c = U._from_f(self._p)
        return self._c

    def _wrap(self, p):
        return NFElem(self.field, p)

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise ValueError("mixing elements of different number fields")
            return other._p
        q = Q(other)
        return flint.fmpq_poly([flint.fmpq(int(q.numerator), int(q.denominator))])

    def __add__(self, other):
        return self._wrap(self._p + self._coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self._p)

    def __sub__(self, other):
        return self._wrap(self._p - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self._p)

    def __mul__(self, other):
        prod = self._p * self._coerce(other)
        if prod.degree() >= self.field.degree:
            prod = prod % self.field.fmod
        return self._wrap(prod)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self._p.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        g, s, _ = self._p.xgcd(self.field.fmod)
        if g.degree() != 0:
            raise ZeroDivisionError("modulus is reducible")
        return self._wrap((s / g.coeffs()[0]) % self.field.fmod)

    def __truediv__(self, other):
        if isinstance(other, NFElem):
            return self * other.inverse()
        return self._wrap(self._p / self._coerce(other).coeffs()[0])

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = flint.fmpq_poly([1])
        base = self._p
        while e:
            if e & 1:
                result = (result * base) % self.field.fmod
            base = (base * base) % self.field.fmod
            e >>= 1
        return self._wrap(result)

    def __bool__(self):
        return not self._p.is_zero()

    def __eq__(self, other):
        try:
            return self._p == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._p.degree() <= 0:
            return hash(self.c[0] if self.c else Q(0))
        return hash((self.field, tuple(self.c)))

    def is_rational(self) -> bool:
        return self._p.degree() <= 0

    def rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.c[0] if self.c else Q(0)

    def numeric(self, root) -> complex:
        return U.evaluate([mpmath.mpf(int(c.numerator)) / int(c.denominator) for c in self.c], root) if self.c else mpmath.mpc(0)

    def __repr__(self):
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.c) if c]
        return "NFElem(" + (" + ".join(terms) or "0") + ")"
