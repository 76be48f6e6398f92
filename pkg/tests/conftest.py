import random

import pytest
from hypothesis import strategies as st

from robustlogics.lasso import LassoWord

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return random.Random(1234)


def lasso(text: str) -> LassoWord:
    return LassoWord.parse(text)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
