import os

import hypothesis
from hypothesis import strategies as st

from lazard.coeff import A, M, CoeffPoly
from lazard.series import Series, SeriesVar

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=500)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GENS = [A(1, 1), A(1, 2), A(2, 2), A(1, 3), M(1), M(2)]


@st.composite
def coeff_polys(draw, max_terms=4, bound=None):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        mono = draw(st.lists(st.tuples(st.sampled_from(GENS), st.integers(1, 2)), max_size=2))
        terms[tuple(mono)] = draw(st.integers(-9, 9))
    return CoeffPoly(terms, bound)


@st.composite
def int_series(draw, names=("x",), bound=5, max_terms=6, zero_constant=True):
    """Series in the given weight-1 variables with small integer or a[1,1]-linear coefficients."""
    vars = tuple(SeriesVar(n, 1) for n in names)
    k = len(names)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, bound)) for _ in range(k))
        if sum(e) > bound or (zero_constant and sum(e) == 0):
            continue
        c = draw(st.integers(-4, 4))
        if draw(st.booleans()):
            c = CoeffPoly({((A(1, 1), 1),): c}) + draw(st.integers(-2, 2))
        terms[e] = c
    return Series(vars, terms, bound)


# acceptance lines, printed at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
