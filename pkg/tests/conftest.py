from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from symred.algebra import Polynomial

settings.register_profile("symred", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("symred")

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def polynomials(draw, nvars=2, max_degree=3, max_terms=5):
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        e = tuple(draw(st.integers(0, max_degree)) for _ in range(nvars))
        if sum(e) <= max_degree:
            terms[e] = draw(small_fractions)
    return Polynomial(nvars, terms)


@st.composite
def rational_points(draw, n):
    return [draw(small_fractions) for _ in range(n)]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[number])
