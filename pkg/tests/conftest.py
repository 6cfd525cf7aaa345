import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from damgshap.demos import figure1_graph, poset_game, reverse_tree
from damgshap.random_instances import random_damg

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def fig1():
    return figure1_graph()


@pytest.fixture
def rtree():
    return reverse_tree()


@pytest.fixture
def poset():
    return poset_game()


# A DAMG drawn from an integer seed keeps shrinking cheap and failures reproducible.
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def damg_from_seed(seed, max_vertices=12, **kw):
    return random_damg(random.Random(seed), max_vertices=max_vertices, **kw)


# One line per acceptance criterion, printed at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def record(number, name, ok, elapsed, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} ({elapsed:.2f}s){' ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
