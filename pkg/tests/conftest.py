import itertools
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def box_points(lo, hi, n):
    return itertools.product(range(lo, hi + 1), repeat=n)


def random_unimodular(rng, n, entry_bound=3, steps=None):
    """Random integer matrix with determinant +-1 and entries in [-bound, bound]."""
    while True:
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(steps or 3 * n):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if i == j:
                M[i] = [-x for x in M[i]]
                continue
            c = rng.choice([-1, 1])
            cand = [a + c * b for a, b in zip(M[i], M[j])]
            if max(abs(x) for x in cand) <= entry_bound:
                M[i] = cand
        if rng.random() < 0.5:
            M[0] = [-x for x in M[0]]
        return M


@pytest.fixture
def frac():
    return Fraction
