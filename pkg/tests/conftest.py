import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from algkit.presentations import family

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(-5, 5).map(Fraction)


def elements(A, coeffs=small_ints):
    return st.lists(coeffs, min_size=A.dim, max_size=A.dim).map(A.element)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4), entries=small_ints):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(
            st.lists(entries, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]
        )
    )


@pytest.fixture(scope="session")
def H():
    return family("H", 2)


@pytest.fixture(scope="session")
def H3():
    return family("H", 3)


@pytest.fixture(scope="session")
def G3():
    return family("G", 3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(results, key=lambda r: r.number):
        terminalreporter.write_line(r.line())
    terminalreporter.write_line(f"{sum(r.passed for r in results)}/{len(results)} passed")
