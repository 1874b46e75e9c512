from fractions import Fraction

from hypothesis import settings, strategies as st

from crsphere.monomials import Polynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fraction = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def multi_indices(draw, max_degree=6, n=3):
    return tuple(draw(st.integers(0, max_degree)) for _ in range(n))


@st.composite
def polynomials(draw, max_terms=4, max_degree=4):
    terms = draw(st.dictionaries(multi_indices(max_degree), small_fraction, max_size=max_terms))
    return Polynomial(terms)


@st.composite
def homogeneous_indices(draw, degree):
    a1 = draw(st.integers(0, degree))
    a2 = draw(st.integers(0, degree - a1))
    return (a1, a2, degree - a1 - a2)


def frac(p, q=1):
    return Fraction(p, q)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
