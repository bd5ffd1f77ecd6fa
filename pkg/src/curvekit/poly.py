"""Exact sparse multivariate polynomials over the rationals.

A :class:`MultiPoly` is an immutable map from exponent vectors to nonzero
coefficients over a fixed, ordered tuple of variable names.  Coefficients
are ``gmpy2.mpq`` rationals; number-field elements from
:mod:`curvekit.numberfield` are accepted as well, which is how exact
non-rational points are evaluated downstream.

Printing uses graded lexicographic order with the variables in declared
order, and ``parse(str(p), p.variables) == p`` always holds.
"""

from __future__ import annotations

import re
from itertools import combinations_with_replacement
from math import gcd as igcd, lcm

from ._upoly import Q
from .errors import PolySyntaxError, UnknownVariable

XYZ = ("x", "y", "z")
XYZW = ("x", "y", "z", "w")


def _zero_like(c):
    return c * 0


class MultiPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError("exponent length does not match variables")
                if c:
                    clean[tuple(e)] = c if not isinstance(c, (int, float)) else Q(c)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c, variables):
        return cls(variables, {(0,) * len(variables): Q(c) if isinstance(c, int) else c})

    @classmethod
    def var(cls, name, variables):
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(name)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): Q(1)})

    @classmethod
    def gens(cls, variables):
        return tuple(cls.var(v, variables) for v in variables)

    @classmethod
    def from_univariate(cls, coeffs, var, variables):
        k = tuple(variables).index(var)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * len(variables)
            e[k] = i
            terms[tuple(e)] = c
        return cls(variables, terms)

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def lowest_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def degree_in(self, v) -> int:
        k = self._index(v)
        if not self.terms:
            return -1
        return max(e[k] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), Q(0))

    def used_variables(self):
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def _index(self, v) -> int:
        try:
            return self.variables.index(v)
        except ValueError:
            raise UnknownVariable(v) from None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0]

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.variables, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Q(0))

    # -- arithmetic ---------------------------------------------------
    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(other, self.variables)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly(self.variables)
            return MultiPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return self.exact_div(other)
        return self * (1 / (Q(other) if isinstance(other, int) else other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, type(Q(0)))):
            return self == MultiPoly.constant(other, self.variables)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def divmod(self, other: "MultiPoly"):
        """Multivariate division by leading terms (grlex); returns (quotient, remainder)."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading_term()
        rest = dict(self.terms)
        quot, rem = {}, {}
        while rest:
            e = max(rest, key=lambda t: (sum(t), t))
            c = rest[e]
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c / lc
                quot[qe] = quot[qe] + qc if qe in quot else qc
                for oe, oc in other.terms.items():
                    te = tuple(a + b for a, b in zip(qe, oe))
                    v = rest.get(te, _zero_like(c)) - qc * oc
                    if v:
                        rest[te] = v
                    else:
                        rest.pop(te, None)
            else:
                rem[e] = c
                del rest[e]
        return MultiPoly(self.variables, quot), MultiPoly(self.variables, rem)

    def exact_div(self, other) -> "MultiPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other) -> bool:
        return not other.divmod(self)[1]

    # -- calculus and substitution -------------------------------------
    def partial(self, v) -> "MultiPoly":
        k = self._index(v)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                out[tuple(ne)] = c * e[k]
        return MultiPoly(self.variables, out)

    def evaluate(self, point):
        """Evaluate at a full point (sequence aligned with variables, or dict)."""
        if isinstance(point, dict):
            point = [point[v] for v in self.variables]
        acc = None
        powers = [dict() for _ in point]
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    p = powers[i].get(k)
                    if p is None:
                        p = point[i] ** k
                        powers[i][k] = p
                    t = t * p
            acc = t if acc is None else acc + t
        return Q(0) if acc is None else acc

    def subs(self, mapping, variables=None) -> "MultiPoly":
        """Substitute variables by polynomials (or scalars) over ``variables``.

        Unmapped variables are kept; they must exist in the target ring.
        """
        variables = tuple(variables) if variables is not None else self.variables
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, MultiPoly):
                    img = MultiPoly.constant(img, variables)
                images.append(img)
            else:
                images.append(MultiPoly.var(v, variables))
        return _compose(self, images, variables)

    def compose(self, images, variables) -> "MultiPoly":
        return _compose(self, list(images), tuple(variables))

    def with_variables(self, variables) -> "MultiPoly":
        """Re-embed into a ring with other variables (names must match or be added)."""
        variables = tuple(variables)
        idx = [variables.index(v) if v in variables else None for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise UnknownVariable(self.variables[i])
                    ne[idx[i]] = k
            out[tuple(ne)] = c
        return MultiPoly(variables, out)

    def coefficients_in(self, v):
        """View as a univariate polynomial in ``v``: list of coefficient polys (low to high)."""
        k = self._index(v)
        d = self.degree_in(v)
        buckets = [dict() for _ in range(max(d, 0) + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            ne[k] = 0
            buckets[e[k]][tuple(ne)] = c
        return [MultiPoly(self.variables, b) for b in buckets] if d >= 0 else []

    def univariate(self, v=None):
        """Dense coefficient list when the polynomial involves at most one variable."""
        used = self.used_variables()
        if v is None:
            if len(used) > 1:
                raise ValueError("polynomial is not univariate")
            v = used[0] if used else self.variables[0]
        elif any(u != v for u in used):
            raise ValueError("polynomial is not univariate in " + v)
        k = self._index(v)
        d = self.degree_in(v)
        out = [Q(0)] * (d + 1)
        for e, c in self.terms.items():
            out[e[k]] = c
        return out

    # -- normalisation ------------------------------------------------
    def primitive(self) -> "MultiPoly":
        """Integer coefficients, content 1, positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = lcm(den, int(Q(c).denominator))
        ints = {e: int(Q(c) * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = igcd(g, v)
        lead = ints[self.leading_term()[0]]
        if lead < 0:
            g = -g
        return MultiPoly(self.variables, {e: Q(v // g) for e, v in ints.items()})

    def monic(self) -> "MultiPoly":
        lc = self.leading_term()[1]
        return self * (1 / lc)

    def proportional(self, other) -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.monic() == other.monic()

    # -- printing -----------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            neg = False
            if isinstance(c, type(Q(0))):
                neg = c < 0
                a = -c if neg else c
                cs = str(a)
            else:
                cs = "(" + repr(c) + ")"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.variables!r}, {str(self)!r})"

    # -- sympy bridge (factorisation witnesses only) ------------------
    def to_sympy(self):
        import sympy

        syms = sympy.symbols(self.variables)
        expr = sympy.Integer(0)
        for e, c in self.terms.items():
            t = sympy.Rational(int(c.numerator), int(c.denominator))
            for s, k in zip(syms, e):
                if k:
                    t = t * s**k
            expr += t
        return sympy.Poly(expr, *syms, domain="QQ")

    @classmethod
    def from_sympy(cls, poly, variables):
        gens = [str(g) for g in poly.gens]
        variables = tuple(variables)
        terms = {}
        for monom, coeff in poly.terms():
            e = [0] * len(variables)
            for g, k in zip(gens, monom):
                if k:
                    e[variables.index(g)] = k
            terms[tuple(e)] = Q(int(coeff.p), int(coeff.q))
        return cls(variables, terms)


def _compose(p: MultiPoly, images, variables) -> MultiPoly:
    cache = [dict() for _ in images]
    acc = MultiPoly(variables)
    for e, c in p.terms.items():
        t = MultiPoly.constant(c, variables) if not isinstance(c, MultiPoly) else c
        for i, k in enumerate(e):
            if k:
                pw = cache[i].get(k)
                if pw is None:
                    pw = images[i] ** k
                    cache[i][k] = pw
                t = t * pw
        acc = acc + t
    return acc


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[col]!r}", col)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, variables):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise PolySyntaxError(f"expected {op!r}", t[2])

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise PolySyntaxError(f"unexpected token {t[1]!r}", t[2])
        return e

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term() * sign
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.unary()
            elif t[0] == "op" and t[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise PolySyntaxError("division only by integer literals", d[2])
                if d[1] == 0:
                    raise PolySyntaxError("division by zero", d[2])
                acc = acc * Q(1, d[1])
            else:
                return acc

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise PolySyntaxError("exponent must be a nonnegative integer", e[2])
            return base ** e[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return MultiPoly.constant(Q(t[1]), self.vars)
        if t[0] == "name":
            if t[1] not in self.vars:
                raise UnknownVariable(t[1], t[2])
            return MultiPoly.var(t[1], self.vars)
        if t[0] == "op" and t[1] == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t[0] == "end":
            raise PolySyntaxError("unexpected end of input", t[2])
        raise PolySyntaxError(f"unexpected token {t[1]!r}", t[2])


def parse(text: str, variables=XYZ) -> MultiPoly:
    """Parse an infix polynomial over the given variables.

    >>> str(parse("x^2+y^2-z^2"))
    'x^2 + y^2 - z^2'
    """
    return _Parser(text, variables).parse()


def form(text: str, variables=XYZ) -> MultiPoly:
    """Parse and require a nonzero homogeneous form."""
    p = parse(text, variables)
    if p.is_zero() or not p.is_homogeneous():
        raise ValueError(f"not a nonzero homogeneous form: {text}")
    return p


def homogenize(p: MultiPoly, z: str = "z") -> MultiPoly:
    """Homogenize with the new variable ``z`` appended (or reused if present)."""
    if p.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    variables = p.variables if z in p.variables else p.variables + (z,)
    q = p.with_variables(variables)
    k = variables.index(z)
    n = p.degree()
    out = {}
    for e, c in q.terms.items():
        ne = list(e)
        ne[k] += n - sum(e)
        out[tuple(ne)] = c
    return MultiPoly(variables, out)


def dehomogenize(f: MultiPoly, z: str = "z") -> MultiPoly:
    return f.subs({z: 1})


def partial(p: MultiPoly, v: str) -> MultiPoly:
    return p.partial(v)


def gradient(f: MultiPoly):
    return tuple(f.partial(v) for v in f.variables)


def euler_combination(f: MultiPoly) -> MultiPoly:
    """Return sum x_i df/dx_i - n f, which is zero for homogeneous f."""
    n = f.degree()
    acc = -n * f
    for v in f.variables:
        acc = acc + MultiPoly.var(v, f.variables) * f.partial(v)
    return acc


def monomials(d: int, nvars: int = 3):
    """Exponent vectors of total degree d, grlex-descending."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def n_monomials(d: int, nvars: int = 3) -> int:
    if d < 0:
        return 0
    from math import comb

    return comb(d + nvars - 1, nvars - 1)


def transform(f: MultiPoly, M) -> MultiPoly:
    """f(M * X): substitute x_i -> sum_j M[i][j] x_j."""
    gens = MultiPoly.gens(f.variables)
    images = []
    for row in M:
        acc = MultiPoly(f.variables)
        for c, g in zip(row, gens):
            if c:
                acc = acc + g * c
        images.append(acc)
    return f.compose(images, f.variables)


def from_coefficients(coeffs, d: int, variables=XYZ) -> MultiPoly:
    mons = monomials(d, len(variables))
    return MultiPoly(variables, {e: c for e, c in zip(mons, coeffs)})
