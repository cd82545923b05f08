import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from covrad.matchings import PerfectMatching  # noqa: E402
from covrad.perms import Permutation  # noqa: E402


@st.composite
def perms(draw, n=None, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n)) if n is None else n
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def perm_pairs(draw, count=2, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    return tuple(draw(perms(n=n)) for _ in range(count))


@st.composite
def matchings(draw, n):
    order = draw(st.permutations(range(1, 2 * n + 1)))
    return PerfectMatching([(order[2 * i], order[2 * i + 1]) for i in range(n)])


@st.composite
def matching_tuples(draw, count=2, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    return tuple(draw(matchings(n)) for _ in range(count))


@pytest.fixture
def tmp_code(tmp_path):
    """Write a code file and return its path."""
    import json

    def write(data, name="code.json"):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return path

    return write


# One line per acceptance criterion, collected by test_acceptance.py.
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
