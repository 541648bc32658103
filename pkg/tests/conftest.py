"""Shared fixtures: the two default-grid sweeps, computed once per session.

The class II field takes about half a minute (every cell runs the tree
oracle), so it is session scoped and only the tests that genuinely need
the default grid depend on it.
"""

import pytest

from sifca import analysis

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def field_i_default():
    return analysis.sweep_class_i(analysis.SweepSpec.default("I"))


@pytest.fixture(scope="session")
def field_ii_default():
    return analysis.sweep_class_ii(analysis.SweepSpec.default("II"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
