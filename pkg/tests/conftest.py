import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def random_symmetric(rng, n, lo=-1.0, hi=1.0):
    a = rng.uniform(lo, hi, (n, n))
    return (a + a.T) / 2.0


def petersen_adjacency():
    """Kneser graph K(5,2): vertices are 2-subsets of [5], edges join
    disjoint pairs."""
    import itertools

    pairs = list(itertools.combinations(range(5), 2))
    n = len(pairs)
    a = np.zeros((n, n))
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            if not set(p) & set(q):
                a[i, j] = 1.0
    return a


def cycle_adjacency(n):
    a = np.zeros((n, n))
    for i in range(n):
        a[i, (i + 1) % n] = a[(i + 1) % n, i] = 1.0
    return a


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
