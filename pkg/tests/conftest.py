import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def brute_affine(x, a):
    """(n+1)x(n+1) homogeneous matrix of the affine map p -> A p + x."""
    n = len(x)
    m = np.eye(n + 1)
    m[:n, :n] = a
    m[:n, n] = x
    return m


def from_homogeneous(m):
    n = m.shape[0] - 1
    return m[:n, n].copy(), m[:n, :n].copy()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
