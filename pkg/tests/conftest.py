import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from dezaswitch.graph import Graph, Permutation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    a = np.zeros((n, n), dtype=bool)
    a[np.triu_indices(n, 1)] = bits
    return Graph(a | a.T)


@st.composite
def permutations(draw, n):
    return Permutation(tuple(draw(st.permutations(range(n)))))


@pytest.fixture
def c4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@st.composite
def involutions(draw, n):
    order = draw(st.permutations(range(n)))
    k = draw(st.integers(0, n // 2))
    pairs = [(order[2 * i], order[2 * i + 1]) for i in range(k)]
    return Permutation.from_pairs(n, pairs)
