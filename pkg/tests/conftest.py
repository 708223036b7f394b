import numpy as np
import pytest

from singquad.oracle import piecewise_polynomial

# filled by test_acceptance, printed once at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


def random_piecewise_poly(rng, degree, xstar):
    left = rng.uniform(-10, 10, degree + 1)
    right = rng.uniform(-10, 10, degree + 1)
    return piecewise_polynomial(left, right, xstar)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
