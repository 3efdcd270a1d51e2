from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from collostab.exactmath import Poly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, max_degree=5, elements=small_fractions):
    coeffs = draw(st.lists(elements, min_size=0, max_size=max_degree + 1))
    return Poly(coeffs)


@st.composite
def node_sets(draw, min_size=1, max_size=5, lo=-1, hi=2, max_denominator=6):
    vals = draw(
        st.lists(
            st.fractions(min_value=lo, max_value=hi, max_denominator=max_denominator),
            min_size=min_size,
            max_size=max_size,
            unique=True,
        )
    )
    return sorted(Fraction(v) for v in vals)


@st.composite
def symmetric_node_sets(draw, max_size=6):
    s = draw(st.integers(1, max_size))
    half = draw(
        st.lists(
            st.fractions(min_value=-1, max_value=Fraction(1, 2), max_denominator=9).filter(lambda v: v != Fraction(1, 2)),
            min_size=s // 2,
            max_size=s // 2,
            unique=True,
        )
    )
    nodes = set(half) | {1 - v for v in half}
    if s % 2:
        nodes.add(Fraction(1, 2))
    return sorted(nodes)


# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
