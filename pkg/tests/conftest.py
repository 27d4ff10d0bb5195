import numpy as np
import pytest

from switchwave.grid import InitialData, make_grid


def scalar_march_pointwise(am0, ap0, n, a, count):
    """Node-by-node march in plain Python floats; index 0 is y = -l/2."""
    am, ap = list(map(float, am0)), list(map(float, ap0))
    one, two, three = 2 * n, 4 * n, 6 * n
    k_delay = 6 * n  # y = 5l/2
    while len(am) < count:
        k = len(am)
        m, p = ap[k - one], -am[k - one]
        if k >= k_delay:
            load = a / 2 * (ap[k - three] + ap[k - two])
            m, p = m + load, p + load
        am.append(m)
        ap.append(p)
    return np.array(am), np.array(ap)


def scalar_march_boundary(tr0, n, mu1, mu2, count):
    """Node-by-node march; index 0 is y = -l, window from t = y - l."""
    tr = list(map(float, tr0))
    two, four = 4 * n, 8 * n
    kappa = (1 + mu1) / (mu1 - 1)
    while len(tr) < count:
        k = len(tr)
        w = (k - two) // two
        if w == 0:
            v = -tr[k - two]
        elif w % 2 == 1:
            v = kappa * tr[k - two]
        else:
            v = (mu2 - 1) * tr[k - two] - mu2 * tr[k - four]
        tr.append(v)
    return np.array(tr)


def random_data(grid, seed):
    rng = np.random.default_rng(seed)
    size = grid.nodes_per_ell + 1
    return InitialData(rng.standard_normal(size), rng.standard_normal(size))


@pytest.fixture
def grid16():
    return make_grid(1.0, 16)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
