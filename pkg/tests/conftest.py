import random

import pytest

from lensgrid.lens_core import LensParams

LENSES = [LensParams(p, q) for p, q in ((1, 0), (2, 1), (3, 1), (3, 2), (4, 1), (4, 3),
                                        (5, 1), (5, 2), (5, 3), (5, 4))]

# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--quick-census", action="store_true",
                     help="sample grid-number-3 diagrams in the move-invariance criterion")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240611)
