import random

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import P
from curvekit.errors import (
    CenterDegenerate,
    DegenerateParametrization,
    Inconsistent,
    InconsistentLinkage,
    OutOfRegime,
    Underdetermined,
)
from curvekit.local import classify_singularities
from curvekit.poly import MultiPoly, monomials
from curvekit.series import genus
from curvekit.space import (
    CayleyChars,
    LinkageInput,
    castelnuovo_bound,
    cayley_complete,
    cayley_relations,
    ci_characters,
    linked_characters,
    moduli_count,
    postulation,
    postulation_rank,
    project_ci,
    project_parametrized,
    quadric_bidegree_genus,
)
from oracles import rank_q

ST = ("s", "t")


def S(text):
    return P(text, ST)


TWISTED = [S("s^3"), S("s^2*t"), S("s*t^2"), S("t^3")]


def test_cayley_examples():
    c = cayley_complete(CayleyChars(n=3, p=0))
    assert (c.d, c.r, c.nu, c.K) == (1, 4, 3, 0)
    c = cayley_complete(CayleyChars(n=6, p=4))
    assert (c.r, c.d) == (18, 6)
    for n in range(3, 8):
        c = cayley_complete(CayleyChars(n=n, p=(n - 1) * (n - 2) // 2))
        assert c.d == 0


def test_cayley_errors():
    with pytest.raises(Underdetermined):
        cayley_complete(CayleyChars(p=1))
    with pytest.raises(Inconsistent):
        cayley_complete(CayleyChars(n=3, p=2))


@given(st.integers(1, 14), st.integers(0, 40))
def test_cayley_closure(n, p):
    try:
        c = cayley_complete(CayleyChars(n=n, p=p))
    except Inconsistent:
        assert p > (n - 1) * (n - 2) // 2 or n < 3
        return
    assert all(v == 0 for v in cayley_relations(c).values())
    assert c.r == 2 * (n + p - 1)
    assert c.nu == 3 * (n + 2 * p - 2)


@pytest.mark.parametrize(
    "mu,nu,expect",
    [(2, 2, (4, 8, 1, 2)), (2, 3, (6, 18, 4, 6)), (3, 3, (9, 36, 10, 18)), (1, 4, (4, 12, 3, 0))],
)
def test_ci_characters(mu, nu, expect):
    c = ci_characters(mu, nu)
    assert (c.n, c.r, c.p, c.d) == expect


def test_ci_line_and_conic_have_no_cayley_characters():
    # with K = 0 a line gets a negative class and a conic a negative tau
    for mu, nu in [(1, 1), (1, 2), (2, 1)]:
        with pytest.raises(Inconsistent):
            ci_characters(mu, nu)


@given(st.integers(1, 8), st.integers(1, 8))
def test_ci_formulas(mu, nu):
    assume(mu * nu >= 3)
    c = ci_characters(mu, nu)
    assert c.n == mu * nu
    assert c.r == mu * nu * (mu + nu - 2)
    assert 2 * c.p - 2 == mu * nu * (mu + nu - 4)
    assert 2 * c.d == mu * nu * (mu - 1) * (nu - 1)


def test_linkage_examples():
    lk = linked_characters(LinkageInput(2, 2, 3, p1=0))
    assert (lk.i, lk.n2, lk.p2, lk.p_total) == (2, 1, 0, 1)
    lk = linked_characters(LinkageInput(2, 2, 2, p1=0))
    assert (lk.i, lk.n2, lk.p2, lk.p_total) == (2, 2, 0, 1)
    with pytest.raises(InconsistentLinkage):
        linked_characters(LinkageInput(2, 2, 4, i=0))
    with pytest.raises(InconsistentLinkage):
        linked_characters(LinkageInput(2, 2, 3, p1=0, i=3))


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 24), st.integers(0, 30))
def test_linkage_conservation(mu, nu, n1, p1):
    try:
        lk = linked_characters(LinkageInput(mu, nu, n1, p1=p1))
    except InconsistentLinkage:
        return
    assert lk.n2 == mu * nu - n1
    assert p1 + lk.p2 + lk.i - 1 == ci_characters(mu, nu).p
    # the residual relation read from the other side gives back p1
    back = linked_characters(LinkageInput(mu, nu, lk.n2, p1=lk.p2))
    assert back.i == lk.i and back.p2 == p1


def test_project_ci22(curve):
    f, g = curve("ci22-a.surf"), curve("ci22-b.surf")
    plane = project_ci(f, g, (1, 2, 3, 5))
    assert plane.degree() == 4
    sings = classify_singularities(plane)
    assert sum(s.orbit_size for s in sings if s.kind == "node") == 2
    assert genus(plane).p == ci_characters(2, 2).p == 1


def test_project_ci23_from_point_on_curve(curve):
    f, g = curve("ci23-quadric.surf"), curve("ci23-cubic.surf")
    plane = project_ci(f, g, (0, 0, 0, 1))
    assert plane.degree() == 5
    sings = classify_singularities(plane)
    assert [s.kind for s in sings] == ["node"] * len(sings)
    assert sum(s.orbit_size for s in sings) == 2
    assert genus(plane).p == ci_characters(2, 3).p == 4
    assert plane.proportional(curve("two-nodal-quintic"))


def test_project_ci_degenerate(curve):
    f = curve("ci22-a.surf")
    # a cone through the center and the same quadric: no curve to project
    with pytest.raises(CenterDegenerate):
        project_ci(f, f * 2, (1, 2, 3, 5))


def test_project_twisted_cubic():
    plane = project_parametrized(TWISTED, (1, 1, 2, 3))
    assert plane.degree() == 3
    sings = classify_singularities(plane)
    assert [(s.kind, s.orbit_size) for s in sings] == [("node", 1)]
    assert cayley_complete(CayleyChars(n=3, p=0)).d == 1


def test_postulation_examples():
    assert postulation(3, 0, 2).value == 7
    q = postulation(6, 4, 3, ci=(2, 3))
    assert q.value == 15 and q.reliable
    assert not postulation(10, 0, 1).reliable


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_twisted_cubic_postulation(m):
    k = postulation_rank(TWISTED, m)
    assert k == 3 * m + 1 == postulation(3, 0, m).value


def test_net_of_quadrics():
    # quadrics through the twisted cubic: kernel of the evaluation map, dimension 3 (a net)
    rows = []
    for e in monomials(2, 4):
        acc = MultiPoly.constant(1, ST)
        for q, a in zip(TWISTED, e):
            acc = acc * q**a
        rows.append([acc.coeff(t) for t in monomials(6, 2)])
    assert 10 - rank_q([[sympy.Rational(str(v)) for v in r] for r in rows]) == 3
    assert 10 - postulation_rank(TWISTED, 2) - 1 == 2


def test_postulation_rank_examples():
    line = [S("s"), S("t"), S("0"), S("0")]
    assert postulation_rank(line, 2) == 3
    quartic = [S("s^4"), S("s^3*t"), S("s*t^3"), S("t^4")]
    # monomial curve: the rank is the number of distinct exponent sums
    sums = {a + b for a in (0, 1, 3, 4) for b in (0, 1, 3, 4)}
    assert postulation_rank(quartic, 2) == len(sums) == 9
    with pytest.raises(DegenerateParametrization):
        postulation_rank([S("s^2"), S("s*t"), S("s^2 + s*t"), S("s^2")], 2)


@pytest.mark.parametrize("seed", range(4))
def test_postulation_rank_random(seed):
    rng = random.Random(seed)
    k = rng.randint(2, 4)
    forms = [MultiPoly(ST, {(i, k - i): rng.randint(-5, 5) for i in range(k + 1)}) for _ in range(4)]
    m = rng.randint(1, 3)
    s, t = sympy.symbols("s t")
    exprs = [q.to_sympy().as_expr() for q in forms]
    rows = []
    for e in monomials(m, 4):
        prod = sympy.expand(sympy.Mul(*[x**a for x, a in zip(exprs, e)]))
        poly = sympy.Poly(prod, s, t)
        rows.append([poly.coeff_monomial(s**i * t ** (m * k - i)) for i in range(m * k + 1)])
    try:
        got = postulation_rank(forms, m)
    except DegenerateParametrization:
        return
    assert got == rank_q(rows)


def test_castelnuovo():
    for n in range(3, 13):
        chi = (n - 2) // 2 if n % 2 == 0 else (n - 3) // 2
        b = castelnuovo_bound(n)
        assert b == chi * (n - chi - 2)
        assert b == ((n - 2) ** 2 // 4 if n % 2 == 0 else (n - 1) * (n - 3) // 4)
        assert b == max(quadric_bidegree_genus(n, mu) for mu in range(1, n))
    for n in (4, 6, 8):
        assert ci_characters(2, n // 2).p == castelnuovo_bound(n)
    assert ci_characters(3, 3).p == 10 < castelnuovo_bound(9) == 12
    assert (castelnuovo_bound(4), castelnuovo_bound(6), castelnuovo_bound(7)) == (1, 4, 6)


def test_quadric_genus_examples():
    assert quadric_bidegree_genus(6, 3) == 4
    assert quadric_bidegree_genus(6, 2) == 3
    assert quadric_bidegree_genus(5, 2) == 2 == castelnuovo_bound(5)


def test_moduli():
    assert (moduli_count(3, 0), moduli_count(4, 1), moduli_count(5, 2)) == (12, 16, 20)
    with pytest.raises(OutOfRegime):
        moduli_count(5, 3)
