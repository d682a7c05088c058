import pytest
from hypothesis import settings, strategies as st

from envyfree import validate_instance

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report():
    def _report(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return _report


def int_instances(min_n=1, max_n=6, max_value=50):
    return st.integers(min_n, max_n).flatmap(lambda n: st.tuples(
        st.lists(st.integers(1, max_value), min_size=n, max_size=n),
        st.lists(st.integers(1, max_value), min_size=n, max_size=n),
    )).map(lambda bq: validate_instance(*bq))


def real_instances(min_n=1, max_n=6):
    value = st.floats(1e-3, 1e3, allow_nan=False, allow_infinity=False)
    return st.integers(min_n, max_n).flatmap(lambda n: st.tuples(
        st.lists(value, min_size=n, max_size=n),
        st.lists(value, min_size=n, max_size=n),
    )).map(lambda bq: validate_instance(*bq))
