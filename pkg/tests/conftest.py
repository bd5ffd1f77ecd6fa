import random

import gmpy2
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from curvekit.corpus import load_curve
from curvekit.poly import XYZ, MultiPoly, monomials, parse

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")


@pytest.fixture
def curve():
    return load_curve


def P(text, variables=XYZ):
    return parse(text, variables)


def random_form(rng: random.Random, d: int, lo: int = -5, hi: int = 5, density: float = 1.0) -> MultiPoly:
    terms = {}
    for e in monomials(d, 3):
        if rng.random() <= density:
            c = rng.randint(lo, hi)
            if c:
                terms[e] = c
    if not terms:
        terms[(d, 0, 0)] = 1
    return MultiPoly(XYZ, terms)


@st.composite
def polys(draw, variables=XYZ, max_degree=4, max_terms=6):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_degree)) for _ in variables)
        num = draw(st.integers(-20, 20))
        den = draw(st.integers(1, 6))
        terms[e] = terms.get(e, 0) + gmpy2.mpq(num, den)
    return MultiPoly(variables, terms)


@st.composite
def forms(draw, d, max_terms=8):
    mons = monomials(d, 3)
    idx = draw(st.lists(st.integers(0, len(mons) - 1), min_size=1, max_size=max_terms, unique=True))
    terms = {mons[i]: draw(st.integers(-9, 9).filter(bool)) for i in idx}
    return MultiPoly(XYZ, terms)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when == "call" or (status == "error" and "test_criterion_" in nodeid):
                name = nodeid.split("::")[-1][len("test_criterion_"):]
                lines.append((name, "PASS" if status == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"{verdict}  criterion {name}")
