import random

import pytest
from hypothesis import settings

from mukaifact.mukai import rank_one_model

settings.register_profile("repo", max_examples=200, deadline=None, derandomize=True)
settings.load_profile("repo")

# acceptance lines collected by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20241015)


@pytest.fixture
def ogrady():
    return rank_one_model("k3", 2)


@pytest.fixture
def abelian_ols():
    return rank_one_model("abelian", 2)
