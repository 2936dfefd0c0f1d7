import math

import numpy as np
import pytest
from numpy.polynomial import Chebyshev, chebyshev

from semiortho import SchurSequence

ACCEPTANCE_LINES = []


def monic_t(n):
    """Monic Chebyshev polynomial of the first kind, power basis."""
    c = chebyshev.cheb2poly([0] * n + [1])
    return c / c[-1]


def monic_u(n):
    """Monic Chebyshev polynomial of the second kind, power basis."""
    if n < 0:
        return np.zeros(1)
    # U_n = T_{n+1}' / (n + 1)
    c = Chebyshev.basis(n + 1).deriv().convert(kind=np.polynomial.Polynomial).coef
    return c / c[-1]


def padded(c, length):
    out = np.zeros(length)
    out[: len(c)] = c
    return out


def random_heads(count, seed, max_len=8, max_abs=0.8):
    rng = np.random.default_rng(seed)
    return [SchurSequence.random(rng, max_len, max_abs) for _ in range(count)]


@pytest.fixture
def acceptance():
    """Record one verdict line per acceptance criterion."""

    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        print(ACCEPTANCE_LINES[-1])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


TWO_PI = 2 * math.pi
