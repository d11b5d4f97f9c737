import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from halfder.linalg import Matrix
from halfder.repder.sampling import Policy, random_diagram

settings.register_profile(
    "halfder", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("halfder")

# a small policy keeps the unit tests fast; the acceptance run uses the default
SMALL = Policy(seed=7, samples=4, max_dim=3)


@pytest.fixture
def small_policy():
    return SMALL


entries = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5, rows=None, cols=None):
    r = draw(st.integers(0, max_rows)) if rows is None else rows
    c = draw(st.integers(0, max_cols)) if cols is None else cols
    data = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix(r, c, data)


@st.composite
def diagrams_on(draw, K, max_dim=3):
    seed = draw(st.integers(0, 10**6))
    return random_diagram(K, random.Random(seed), max_dim)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
