from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from signed_inertia import SignedGraph, SymMat, clear_cache

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))


@st.composite
def sym_matrices(draw, min_size=0, max_size=5, entries=rationals):
    n = draw(st.integers(min_size, max_size))
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = draw(entries)
    return SymMat(rows, n)


@st.composite
def signed_graphs(draw, min_n=1, max_n=4, max_edges=7):
    n = draw(st.integers(min_n, max_n))
    vert = st.integers(1, n)
    edges = draw(st.lists(st.tuples(vert, vert, st.sampled_from("oe")), max_size=max_edges))
    return SignedGraph.build(n, edges)


@pytest.fixture(autouse=True)
def _fresh_memo():
    clear_cache()
    yield


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
