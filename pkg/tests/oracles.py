"""Independent reference computations (sympy based) used to check the library."""

import sympy

x, y = sympy.symbols("x y")


def _ord0(p):
    """Order of vanishing at x = 0 of a univariate polynomial in x."""
    p = sympy.Poly(p, x)
    if p.is_zero:
        return None
    return min(m[0] for m in p.monoms())


def fulton(F, G, depth=0):
    """Intersection number at the origin of affine curves F, G in Q[x, y] (Fulton's algorithm)."""
    F, G = sympy.expand(F), sympy.expand(G)
    if F.subs({x: 0, y: 0}) != 0 or G.subs({x: 0, y: 0}) != 0:
        return 0
    f0, g0 = sympy.Poly(F.subs(y, 0), x), sympy.Poly(G.subs(y, 0), x)
    if f0.is_zero and g0.is_zero:
        raise ValueError("y divides both")  # caller picks coordinates avoiding this
    if f0.is_zero:
        F, G, f0, g0 = G, F, g0, f0
    if g0.is_zero:
        H = sympy.cancel(G / y)
        return _ord0(f0.as_expr()) + fulton(F, H, depth + 1)
    if f0.degree() > g0.degree():
        F, G, f0, g0 = G, F, g0, f0
    r, s = f0.degree(), g0.degree()
    G1 = sympy.expand(f0.LC() * G - g0.LC() * x ** (s - r) * F)
    return fulton(F, G1, depth + 1)


def affine_at(f, P):
    """f(x, y, z) moved so that the rational point P (with z != 0) becomes the affine origin."""
    X, Y, Z = sympy.symbols("x y z")
    a, b, c = [sympy.Integer(v) for v in P]
    e = sympy.sympify(str(f), convert_xor=True)
    return sympy.expand(e.subs({X: x + a / c, Y: y + b / c, Z: 1}, simultaneous=True))


def intersection_number(f, g, P):
    """I_P(f, g) for ternary forms and a rational point with nonzero last coordinate."""
    F, G = affine_at(f, P), affine_at(g, P)
    # a generic linear change keeps y from dividing both curves
    for t in range(1, 8):
        Fs, Gs = F.subs(x, x + t * y, simultaneous=True), G.subs(x, x + t * y, simultaneous=True)
        try:
            return fulton(sympy.expand(Fs), sympy.expand(Gs))
        except ValueError:
            continue
    raise ValueError("no usable coordinates")


def rank_q(rows):
    return sympy.Matrix(rows).rank() if rows else 0
