import random

import pytest
from hypothesis import strategies as st

from whitehead.spaces import from_spheres

sphere_lists = st.lists(st.integers(min_value=2, max_value=8), min_size=0, max_size=6)


def random_wedge_pairs(n, seed=0, degree=32):
    """``n`` pairs of sphere wedges: 1-6 cells, degrees 2-8."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        a = [rng.randint(2, 8) for _ in range(rng.randint(1, 6))]
        b = [rng.randint(2, 8) for _ in range(rng.randint(1, 6))]
        out.append((from_spheres(a, degree, "G"), from_spheres(b, degree, "H")))
    return out


@pytest.fixture
def s2():
    return from_spheres([2], 32)
