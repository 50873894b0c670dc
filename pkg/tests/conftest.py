import pytest
from hypothesis import strategies as st

from qspringborn.laurent import LaurentPoly
from qspringborn.qrat import Frac

# Results of the acceptance suite, filled in by tests/test_acceptance.py and
# printed at the end of the session.
ACCEPTANCE: dict[int, tuple[str, float]] = {}


@st.composite
def laurent_polys(draw, max_terms=6, span=6, coeff=20):
    terms = draw(
        st.dictionaries(st.integers(-span, span), st.integers(-coeff, coeff), max_size=max_terms)
    )
    return LaurentPoly(terms)


@st.composite
def fractions(draw, max_num=30, max_den=30, allow_inf=False):
    if allow_inf and draw(st.integers(0, 20)) == 0:
        return Frac(1, 0)
    b = draw(st.integers(1, max_den))
    a = draw(st.integers(-max_num, max_num))
    return Frac(a, b)


@pytest.fixture
def q_samples():
    return (0.3, 0.45, 0.7)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, secs = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status} ({secs:.2f} s)")
