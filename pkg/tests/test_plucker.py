import random

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import P, random_form
from curvekit.errors import Inconsistent, NotSmoothCubic, Underdetermined, UnsupportedSingularity, ZeroPolar
from curvekit.local import intersect
from curvekit.plucker import (
    PluckerChars,
    check_relations,
    cubic_flex_pencil,
    curve_class,
    dual_curve,
    first_polar,
    flex_count,
    flexes,
    hessian,
    node_cusp_counts,
    plucker_solve,
)
from curvekit.points import ProjPoint


def proportional(a, b):
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    e = next(iter(a.terms))
    if e not in b.terms:
        return False
    return a * b.terms[e] == b * a.terms[e]


def test_first_polar_examples():
    f = P("x^2 + y^2 - z^2")
    assert proportional(first_polar(f, ProjPoint(1, 2, 3)), P("x + 2*y - 3*z"))
    g = P("x^3 + y^3 + z^3")
    assert proportional(first_polar(g, ProjPoint(1, 0, 0)), P("x^2"))
    h = P("x^4 + x*y^2*z + z^4")
    assert first_polar(h, ProjPoint(3, -1, 2)).degree() == 3


def test_zero_polar():
    with pytest.raises(ZeroPolar):
        first_polar(P("y^3 + y*z^2 + z^3"), ProjPoint(1, 0, 0))


@pytest.mark.parametrize(
    "n,d,k,nu,rho",
    [(3, 0, 0, 6, 9), (3, 1, 0, 4, 3), (3, 0, 1, 3, 1)],
)
def test_cubic_table(n, d, k, nu, rho):
    c = plucker_solve(PluckerChars(n=n, d=d, kappa=k))
    assert (c.nu, c.rho) == (nu, rho)


@pytest.mark.parametrize(
    "name,nu,rho", [("fermat-cubic", 6, 9), ("nodal-cubic", 4, 3), ("cuspidal-cubic", 3, 1)]
)
def test_class_and_flex_count_on_curves(curve, name, nu, rho):
    f = curve(name)
    assert curve_class(f) == nu
    assert flex_count(f) == rho


def test_unsupported_singularity(curve):
    f = curve("tacnodal-quartic")
    for fn in (curve_class, flex_count, flexes):
        with pytest.raises(UnsupportedSingularity):
            fn(f)


def test_hessian_examples():
    assert hessian(P("x^3 + y^3 + z^3")) == P("216*x*y*z")
    h = hessian(P("x^2 + y^2 - z^2"))
    assert h.degree() == 0 and not h.is_zero()


@pytest.mark.parametrize("name", ["nodal-cubic", "cuspidal-cubic", "nodal-quartic", "two-nodal-quintic"])
def test_hessian_contains_singular_points(curve, name):
    f = curve(name)
    H = hessian(f)
    _, _, sings = node_cusp_counts(f)
    assert sings
    for s in sings:
        assert not H.evaluate(s.point.field_coords())


def test_fermat_flexes():
    rep = flexes(P("x^3 + y^3 + z^3"))
    assert rep.count() == 9
    rational = {fl.point for fl in rep.flexes if isinstance(fl.point, ProjPoint)}
    assert rational == {ProjPoint(1, -1, 0), ProjPoint(0, 1, -1), ProjPoint(1, 0, -1)}
    assert all(fl.contact == 3 for fl in rep.flexes)
    assert rep.singular_contributions == []


@pytest.mark.parametrize(
    "name,count,contribution",
    [("nodal-cubic", 3, 6), ("cuspidal-cubic", 1, 8), ("nodal-quartic", 18, 6)],
)
def test_flexes_singular_curves(curve, name, count, contribution):
    f = curve(name)
    rep = flexes(f)
    assert rep.count() == count == flex_count(f)
    assert [m for _, m in rep.singular_contributions] == [contribution]
    # the Hessian meets f in 3n(n-2) points in all
    n = f.degree()
    assert rep.count() + contribution == 3 * n * (n - 2)


def test_plucker_solve_examples():
    c = plucker_solve(PluckerChars(n=4, d=0, kappa=0))
    assert (c.nu, c.rho, c.delta, c.p) == (12, 24, 28, 3)
    with pytest.raises(Inconsistent):
        plucker_solve(PluckerChars(n=3, d=2, kappa=0))
    with pytest.raises(Inconsistent):
        plucker_solve(PluckerChars(n=3, d=2))
    c = plucker_solve(PluckerChars(n=3, d=0, kappa=0))
    assert c.as_dict() == {"n": 3, "nu": 6, "d": 0, "kappa": 0, "delta": 0, "rho": 9, "p": 1}


def test_plucker_solve_dual_side():
    c = plucker_solve(PluckerChars(nu=6, delta=0, rho=9))
    assert (c.n, c.d, c.kappa, c.p) == (3, 0, 0, 1)


def test_underdetermined():
    with pytest.raises(Underdetermined):
        plucker_solve(PluckerChars(n=4))


def test_inconsistent_relation_named():
    with pytest.raises(Inconsistent) as ei:
        plucker_solve(PluckerChars(n=4, d=0, kappa=0, nu=11))
    assert "FP1" in str(ei.value)


@st.composite
def node_cusp_data(draw):
    n = draw(st.integers(2, 12))
    top = (n - 1) * (n - 2) // 2
    k = draw(st.integers(0, top))
    d = draw(st.integers(0, top - k))
    return n, d, k


@given(node_cusp_data())
def test_closure_and_duality(data):
    n, d, k = data
    try:
        c = plucker_solve(PluckerChars(n=n, d=d, kappa=k))
    except Inconsistent:
        # only when the dual side would need a negative count
        nu = n * (n - 1) - 2 * d - 3 * k
        rho = 3 * n * (n - 2) - 6 * d - 8 * k
        delta2 = nu * (nu - 1) - 3 * rho - n
        assert min(nu, rho) < 0 or delta2 < 0 or delta2 % 2
        return
    assert all(check_relations(c).values())
    assert len(check_relations(c)) == 7
    assert 3 * c.nu - c.rho == 3 * c.n - c.kappa
    # swapping primal and dual characters gives another consistent record
    dc = c.dual()
    assert all(check_relations(dc).values())
    assert plucker_solve(PluckerChars(n=dc.n, d=dc.d, kappa=dc.kappa)) == dc


def test_dual_conic():
    f = P("x^2 + y^2 - z^2")
    g = dual_curve(f)
    assert proportional(g, P("x^2 + y^2 - z^2"))
    assert proportional(dual_curve(g), f)
    f2 = P("x^2 + 2*y^2 - 3*z^2 + x*y")
    assert proportional(dual_curve(dual_curve(f2)), f2)


@pytest.mark.parametrize("name,nu", [("nodal-cubic", 4), ("cuspidal-cubic", 3), ("fermat-cubic", 6)])
def test_dual_degree(curve, name, nu):
    f = curve(name)
    g = dual_curve(f)
    assert g.degree() == nu
    # tangent lines of f are points of the dual: check at a smooth rational point
    pts = {"nodal-cubic": (-1, 0, 1), "cuspidal-cubic": (1, 1, 1), "fermat-cubic": (1, -1, 0)}
    pt = pts[name]
    assert not f.evaluate(pt)
    tangent = [f.partial(v).evaluate(pt) for v in f.variables]
    assert not g.evaluate(tangent)


def test_dual_cuspidal_is_cuspidal(curve):
    g = dual_curve(curve("cuspidal-cubic"))
    d, k, _ = node_cusp_counts(g)
    assert (d, k) == (0, 1)


@pytest.mark.parametrize("seed", range(4))
def test_class_by_polar(seed, curve):
    # tangencies from a generic point: f ∩ polar minus the singular contributions
    f = curve(["nodal-cubic", "cuspidal-cubic", "fermat-cubic", "nodal-quartic"][seed])
    rng = random.Random(seed)
    Pt = ProjPoint(rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(1, 20))
    pol = first_polar(f, Pt)
    total = 0
    for rec in intersect(f, pol, seed):
        c = rec.point.field_coords()
        if any(f.partial(v).evaluate(c) for v in f.variables):
            assert rec.local_multiplicity == 1
            total += rec.point.degree
    assert total == curve_class(f)


def test_fermat_flex_pencil():
    r = cubic_flex_pencil(P("x^3 + y^3 + z^3"))
    assert r.cube_identity
    assert len(r.triangles) == 4
    assert sum(1 for t in r.triangles if t.parameter == "inf") == 1
    finite = [t.parameter for t in r.triangles if t.parameter != "inf"]
    # x^3+y^3+z^3 + lam*216xyz splits where (216 lam / -3)^3 = 1
    with mpmath.workdps(60):
        for lam in finite:
            assert abs((-72 * lam) ** 3 - 1) < 1e-40
    assert len(r.flexes) == 9
    assert r.incidences == [4] * 9
    assert r.max_residual < 1e-30
    assert sorted(on for _, on in r.rational_checks) == [1, 1, 1]


def test_flex_pencil_degree_twelve():
    r = cubic_flex_pencil(P("x^3 + y^3 + z^3"))
    # nine finite roots plus a triple root at infinity
    assert len(r.discriminant) - 1 == 9
    assert len(r.quartic) == 5


@pytest.mark.parametrize("seed", range(3))
def test_flex_pencil_random(seed):
    rng = random.Random(100 + seed)
    f = random_form(rng, 3, -4, 4)
    r = cubic_flex_pencil(f, seed)
    assert r.cube_identity
    lam, mu = sympy.symbols("lam mu")
    # homogenise the affine discriminant to degree 12 in (lam : mu)
    disc = sum(sympy.Rational(str(c)) * lam**i * mu ** (12 - i) for i, c in enumerate(r.discriminant))
    quart = sum(sympy.Rational(str(c)) * lam**i * mu ** (4 - i) for i, c in enumerate(r.quartic))
    assert sympy.Poly(disc, lam, mu).total_degree() == 12
    ratio = sympy.cancel(disc / quart**3)
    assert ratio.is_Rational and ratio != 0
    _, facs = sympy.factor_list(disc)
    assert all(m % 3 == 0 for _, m in facs)
    assert r.incidences == [4] * 9


def test_not_smooth_cubic(curve):
    with pytest.raises(NotSmoothCubic):
        cubic_flex_pencil(curve("nodal-cubic"))
    with pytest.raises(NotSmoothCubic):
        cubic_flex_pencil(curve("smooth-quartic"))
