"""Dense univariate polynomials as coefficient lists (lowest degree first).

Everything here is generic over a field: the coefficients only need
``+ - * /`` and truthiness for zero tests, so rationals and number-field
elements both work.
"""

from __future__ import annotations

import flint
from gmpy2 import mpq

Q = mpq
_MPQ = type(mpq(0))
_FAST = 12  # below this length the plain loops win


def _rational(*polys) -> bool:
    return all(type(c) is _MPQ for a in polys for c in a)


def _to_f(a):
    return flint.fmpq_poly([flint.fmpq(int(c.numerator), int(c.denominator)) for c in a])


def _from_f(p):
    return [mpq(int(c.p), int(c.q)) for c in p.coeffs()]


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out)


def neg(a):
    return [-c for c in a]


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    if not c:
        return []
    return trim([x * c for x in a])


def mul(a, b):
    if not a or not b:
        return []
    if len(a) + len(b) > _FAST and _rational(a, b):
        return _from_f(_to_f(a) * _to_f(b))
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def shift(a, k: int):
    """Multiply by t^k."""
    if not a:
        return []
    return [a[0] * 0] * k + list(a)


def divmod_(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], trim(a)
    if len(a) > _FAST and _rational(a, b):
        q, r = divmod(_to_f(trim(a)), _to_f(b))
        return _from_f(q), _from_f(r)
    quot = [a[0] * 0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        quot[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = a[k + j] - c * b[j]
    return trim(quot), trim(a[:db])


def rem(a, b):
    return divmod_(a, b)[1]


def exact_div(a, b):
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(a):
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def gcd(a, b):
    a, b = trim(a), trim(b)
    if a and b and len(a) + len(b) > _FAST and _rational(a, b):
        return _from_f(_to_f(a).gcd(_to_f(b)))
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = trim(a), trim(b)
    if r0 and r1 and len(r0) + len(r1) > _FAST and _rational(r0, r1):
        g, s, t = _to_f(r0).xgcd(_to_f(r1))
        return _from_f(g), _from_f(s), _from_f(t)
    one = [Q(1)]
    s0, s1, t0, t1 = one, [], [], one
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    lead = r0[-1]
    return monic(r0), [c / lead for c in s0], [c / lead for c in t0]


def derivative(a):
    return trim([a[i] * i for i in range(1, len(a))])


def evaluate(a, x):
    acc = x * 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def compose(a, b):
    """a(b(t))."""
    out = []
    for c in reversed(a):
        out = add(mul(out, b), [c])
    return out


def powmod(a, e: int, m):
    result = [Q(1)]
    base = rem(a, m)
    while e:
        if e & 1:
            result = rem(mul(result, base), m)
        base = rem(mul(base, base), m)
        e >>= 1
    return result


def squarefree(a):
    """Yun's algorithm: list of (factor, multiplicity), factors monic."""
    a = trim(a)
    if len(a) <= 1:
        return []
    out = []
    da = derivative(a)
    g = gcd(a, da)
    b = exact_div(a, g)
    c = exact_div(da, g)
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        g = gcd(b, d)
        b = exact_div(b, g)
        c = exact_div(d, g)
        if len(g) > 1:
            out.append((monic(g), i))
        d = sub(c, derivative(b))
        i += 1
    return out


def valuation(a, q) -> int:
    """Largest k with q^k | a (a nonzero)."""
    k = 0
    a = trim(a)
    while a:
        quo, r = divmod_(a, q)
        if r:
            break
        a = quo
        k += 1
    return k


def resultant(a, b):
    """Resultant of two univariate polynomials by the Euclidean scheme."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return Q(0)
    m, n = len(a) - 1, len(b) - 1
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    res = a[0] * 0 + 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return res * b[0] ** m
        r = rem(a, b)
        if not r:
            return res * 0
        if (m * n) % 2:
            res = -res
        res = res * b[-1] ** (m - len(r) + 1)
        a, b = b, r


def to_int_primitive(a):
    """Scale rational coefficients to coprime integers with positive lead."""
    from math import gcd as igcd, lcm

    a = trim(a)
    if not a:
        return []
    den = 1
    for c in a:
        den = lcm(den, int(Q(c).denominator))
    ints = [int(Q(c) * den) for c in a]
    g = 0
    for v in ints:
        g = igcd(g, v)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def interpolate(xs, ys):
    """Newton interpolation through the given nodes."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = []
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [-xs[i], Q(1)]), [coef[i]])
    return out
