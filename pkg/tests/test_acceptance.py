"""The sixteen acceptance criteria, one test each.

A PASS/FAIL line per criterion is printed in the terminal summary (see conftest).
"""

import random

import mpmath
import sympy

from conftest import P, random_form
from curvekit.corpus import corpus_verify, load_curve
from curvekit.cremona import homaloidal_check, resolve
from curvekit.errors import Inconsistent, NotSmoothCubic
from curvekit.linsys import noether_decompose
from curvekit.local import classify_singularities, intersect
from curvekit.numberfield import NumberField
from curvekit.plucker import (
    PluckerChars,
    characters,
    check_relations,
    cubic_flex_pencil,
    first_polar,
    flexes,
    plucker_solve,
)
from curvekit.points import AlgebraicPoint, ProjPoint
from curvekit.poly import XYZ, MultiPoly, monomials
from curvekit.series import (
    adjoint_system,
    canonical_series,
    cut_series,
    genus,
    pencil_double_points,
    riemann_roch_conditions,
    series_formulas,
)
from curvekit.space import (
    LinkageInput,
    castelnuovo_bound,
    ci_characters,
    linked_characters,
    moduli_count,
    postulation,
    postulation_rank,
    project_ci,
)
from oracles import rank_q

X, Y, Z = sympy.symbols("x y z")


def _sym(f):
    return f.to_sympy().as_expr()


def _coprime(f, g):
    return sympy.gcd(_sym(f), _sym(g)).is_number


def _line(rng):
    return MultiPoly(XYZ, {e: rng.randint(-3, 3) for e in monomials(1, 3)})


def _bezout_pair(rng, i):
    """Random pairs; three in four are built to be special (high contact, split curves, shared singular points)."""
    m, n = rng.randint(1, 4), rng.randint(1, 4)
    kind = i % 4
    f = random_form(rng, m, density=0.7)
    if kind == 0:
        g = random_form(rng, n, density=0.7)
    elif kind == 1:
        # g = f*h + l^k * q when degrees allow: high contact along l = 0
        n = max(n, m)
        l = _line(rng)
        k = rng.randint(1, n)
        g = random_form(rng, n - m, density=0.5) * f + l**k * random_form(rng, n - k, density=0.6)
    elif kind == 2:
        # products of lines through the common point (0:0:1)
        f = MultiPoly(XYZ, {(1, 0, 0): 1})
        for _ in range(m - 1):
            f = f * MultiPoly(XYZ, {(1, 0, 0): rng.randint(-3, 3), (0, 1, 0): rng.randint(-3, 3), (0, 0, 1): rng.randint(0, 1)})
        g = MultiPoly(XYZ, {(0, 1, 0): 1})
        for _ in range(n - 1):
            g = g * MultiPoly(XYZ, {(1, 0, 0): rng.randint(-3, 3), (0, 1, 0): rng.randint(-3, 3), (0, 0, 1): rng.randint(0, 1)})
    else:
        # both singular at (0:0:1): forms with no terms of low order in x, y
        f = MultiPoly(XYZ, {e: rng.randint(-4, 4) for e in monomials(m, 3) if e[0] + e[1] >= min(2, m)})
        g = MultiPoly(XYZ, {e: rng.randint(-4, 4) for e in monomials(n, 3) if e[0] + e[1] >= min(2, n)})
    return f, g


def test_criterion_01_bezout():
    rng = random.Random(2024)
    done = 0
    i = 0
    while done < 200:
        f, g = _bezout_pair(rng, i)
        i += 1
        if f.is_zero() or g.is_zero() or not f.is_homogeneous() or not g.is_homogeneous():
            continue
        if f.degree() < 1 or g.degree() < 1 or not _coprime(f, g):
            continue
        total = sum(r.local_multiplicity * r.point.degree for r in intersect(f, g, seed=i))
        assert total == f.degree() * g.degree(), (str(f), str(g))
        done += 1


def test_criterion_02_cubic_table():
    for (n, d, k), (nu, rho) in {(3, 0, 0): (6, 9), (3, 1, 0): (4, 3), (3, 0, 1): (3, 1)}.items():
        c = plucker_solve(PluckerChars(n=n, d=d, kappa=k))
        assert (c.nu, c.rho) == (nu, rho)
    try:
        plucker_solve(PluckerChars(n=3, d=2, kappa=0))
    except Inconsistent:
        pass
    else:
        raise AssertionError("(3,2,0) accepted")


def test_criterion_03_fermat_flexes():
    f = P("x^3 + y^3 + z^3")
    rep = flexes(f)
    assert rep.count() == 9
    rational = {fl.point for fl in rep.flexes if isinstance(fl.point, ProjPoint)}
    assert rational == {ProjPoint(1, -1, 0), ProjPoint(0, 1, -1), ProjPoint(1, 0, -1)}
    pencil = cubic_flex_pencil(f)
    assert len(pencil.triangles) == 4
    assert sum(len(t.numeric_lines) for t in pencil.triangles) == 12
    assert pencil.incidences == [4] * 9
    assert pencil.max_residual < mpmath.mpf(10) ** -30
    # the rational triangle at infinity: its lines contain the rational flexes exactly
    assert [on for _, on in pencil.rational_checks] == [1, 1, 1]


def test_criterion_04_flex_pencil_cube():
    rng = random.Random(44)
    lam, mu = sympy.symbols("lam mu")
    done = 0
    while done < 20:
        f = random_form(rng, 3, -4, 4)
        try:
            r = cubic_flex_pencil(f, seed=done)
        except NotSmoothCubic:
            continue
        disc = sum(sympy.Rational(str(c)) * lam**i * mu ** (12 - i) for i, c in enumerate(r.discriminant))
        quart = sum(sympy.Rational(str(c)) * lam**i * mu ** (4 - i) for i, c in enumerate(r.quartic))
        assert sympy.Poly(disc, lam, mu).total_degree() == 12
        # independent check: disc is a constant times quart^3 as polynomials
        lead = sympy.Poly(disc, lam, mu).LC() / sympy.Poly(quart**3, lam, mu).LC()
        assert sympy.expand(disc - lead * quart**3) == 0
        assert r.cube_identity
        done += 1


def test_criterion_05_plucker_closure():
    for n in range(2, 10):
        top = (n - 1) * (n - 2) // 2
        for k in range(0, top + 1):
            for d in range(0, top - k + 1):
                try:
                    c = plucker_solve(PluckerChars(n=n, d=d, kappa=k))
                except Inconsistent:
                    continue
                rel = check_relations(c)
                assert all(rel.values()), rel
                assert 3 * c.nu - c.rho == 3 * c.n - c.kappa
    assert plucker_solve(PluckerChars(n=4, d=0, kappa=0)).delta == 28
    assert characters(load_curve("smooth-quartic")).delta == 28


def test_criterion_06_noether():
    rng = random.Random(66)
    done = 0
    while done < 50:
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        n = rng.randint(max(p, q), 6)
        phi, psi = random_form(rng, p), random_form(rng, q)
        if not _coprime(phi, psi):
            continue
        A, B = random_form(rng, n - p, density=0.6), random_form(rng, n - q, density=0.6)
        f = A * phi + B * psi
        if f.is_zero():
            continue
        dec = noether_decompose(f, phi, psi, seed=done)
        assert dec.A * phi + dec.B * psi == f
        k = n - p - q
        if k >= 0:
            assert dec.residual_freedom == len(monomials(k, 3))
        done += 1


def test_criterion_07_cremona():
    for name in ("cuspidal-cubic", "tacnodal-quartic"):
        f = load_curve(name)
        p0 = genus(f).p
        res = resolve(f, seed=0)
        assert res.steps
        for step in res.steps:
            n = step.before.degree()
            a, b, c = step.multiplicities_at_triangle
            assert step.after.degree() == 2 * n - a - b - c
            assert step.after_multiplicities == (n - b - c, n - a - c, n - a - b)
            assert genus(step.before).p == genus(step.after).p == p0
        assert all(s.is_ordinary for s in classify_singularities(res.final))


def test_criterion_08_homaloidal():
    for n, ms in [(1, []), (2, [1, 1, 1]), (3, [2, 1, 1, 1, 1])]:
        assert sum(ms) == 3 * (n - 1)
        assert sum(m * m for m in ms) == n * n - 1
        assert homaloidal_check(n, ms)
        assert not homaloidal_check(n + 1, ms)
        assert not homaloidal_check(n, ms + [1])
        for i in range(len(ms)):
            for e in (-1, 1):
                m2 = list(ms)
                m2[i] += e
                assert not homaloidal_check(n, m2)


def test_criterion_09_series():
    for name, label in [("nodal-quartic", "g^1_2"), ("smooth-quartic", "g^2_4"), ("smooth-quintic", "g^5_10")]:
        f = load_curve(name)
        assert canonical_series(f).label() == label
        p = genus(f).p
        for i in (3, 4):
            d = cut_series(f, adjoint_system(f, f.degree() - 3 + i), p=p)
            assert (d.order, d.dimension) == series_formulas(f.degree(), p, i)
            assert d.order - d.dimension == p


RR_QUARTIC = "y*(y-z)*(y+z)*(y-2*z) + x*((x-z)*(x+z)*(x-3*z) + y*(x*y + 2*y*z - z^2 + x*z))"


def _eval_rank(basis, coords):
    """Brute force: rank of the adjoint basis evaluated at the given (possibly algebraic) points."""
    rows = [[g.to_sympy().as_expr().subs({X: c[0], Y: c[1], Z: c[2]}, simultaneous=True) for g in basis] for c in coords]
    return sympy.Matrix(rows).applyfunc(sympy.nsimplify).rank(simplify=True)


def test_criterion_10_riemann_roch():
    f = P(RR_QUARTIC)
    lines = adjoint_system(f, 1).basis
    collinear = [(0, 0, 1), (0, 1, 1), (0, -1, 1), (0, 2, 1)]
    general = [(0, 1, 1), (0, -1, 1), (1, 0, 1), (3, 0, 1)]
    for pts, want in ((collinear, 2), (general, 3)):
        got = riemann_roch_conditions(f, [ProjPoint(*c) for c in pts])
        assert got == want == _eval_rank(lines, pts)
    g = load_curve("nodal-quartic")
    pair = AlgebraicPoint.make(NumberField([1, 1, 1]), [[0, 1], [0], [1]])
    roots = sympy.solve(X**2 + X + 1, X)
    conj = [(t, 0, 1) for t in roots]
    assert all(sympy.simplify(_sym(g).subs({X: c[0], Y: 0, Z: 1})) == 0 for c in conj)
    got = riemann_roch_conditions(g, [pair])
    assert got == 1 == _eval_rank(adjoint_system(g, 1).basis, conj)


def test_criterion_11_pencil_double_points():
    for name in ("conic", "nodal-cubic", "fermat-cubic", "smooth-quartic", "nodal-quartic", "smooth-quintic", "two-nodal-quintic"):
        f = load_curve(name)
        c = characters(f)
        assert c.kappa == 0
        assert pencil_double_points(f.degree(), genus(f).p) == c.nu
    # elliptic g^1_2: lines through a non-flex point O of a cubic
    f = P("y^2*z - x^3 + x*z^2")
    O = ProjPoint(0, 0, 1)
    moving = sum(r.local_multiplicity * r.point.degree for r in intersect(f, first_polar(f, O)) if r.point != O)
    assert moving == pencil_double_points(2, 1) == 4
    # g^1_3 on a smooth cubic: lines through a point off it, i.e. the class
    assert pencil_double_points(3, 1) == 6 == characters(load_curve("fermat-cubic")).nu


def test_criterion_12_space():
    c = ci_characters(2, 2)
    assert (c.n, c.r, c.p, c.d) == (4, 8, 1, 2)
    c = ci_characters(2, 3)
    assert (c.n, c.r, c.p, c.d) == (6, 18, 4, 6)
    lk = linked_characters(LinkageInput(2, 2, 3, p1=0))
    assert (lk.i, lk.n2, lk.p2) == (2, 1, 0)
    assert 0 + lk.p2 + lk.i - 1 == ci_characters(2, 2).p
    plane = project_ci(load_curve("ci23-quadric.surf"), load_curve("ci23-cubic.surf"), (0, 0, 0, 1))
    assert plane.degree() == 5
    sings = classify_singularities(plane)
    assert [s.kind for s in sings] == ["node"] * len(sings)
    assert sum(s.orbit_size for s in sings) == 2
    assert genus(plane).p == 4


def test_criterion_13_castelnuovo():
    for n in range(3, 13):
        chi = (n - 2) // 2 if n % 2 == 0 else (n - 3) // 2
        assert castelnuovo_bound(n) == chi * (n - chi - 2)
    for n in (4, 6, 8):
        assert ci_characters(2, n // 2).p == castelnuovo_bound(n)
    assert ci_characters(3, 3).p == 10 < castelnuovo_bound(9) == 12


def test_criterion_14_postulation():
    s, t = sympy.symbols("s t")
    twisted = [P(e, ("s", "t")) for e in ("s^3", "s^2*t", "s*t^2", "t^3")]
    assert postulation_rank(twisted, 2) == 7
    # brute-force oracle: quadrics through the twisted cubic
    params = [s**3, s**2 * t, s * t**2, t**3]
    rows = []
    for e in monomials(2, 4):
        prod = sympy.expand(sympy.Mul(*[v**a for v, a in zip(params, e)]))
        poly = sympy.Poly(prod, s, t)
        rows.append([poly.coeff_monomial(s**i * t ** (6 - i)) for i in range(7)])
    rk = rank_q(rows)
    assert rk == 7 and 10 - rk - 1 == 2
    for m in range(1, 5):
        assert postulation_rank(twisted, m) == 3 * m + 1 == postulation(3, 0, m).value


def test_criterion_15_moduli():
    assert (moduli_count(3, 0), moduli_count(4, 1), moduli_count(5, 2)) == (12, 16, 20)


def test_criterion_16_determinism():
    a = corpus_verify(seed=0)
    b = corpus_verify(seed=0)
    assert a.ok
    assert a.text() == b.text()
