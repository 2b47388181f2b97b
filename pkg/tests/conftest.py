import numpy as np
import pytest

from degdiff import Graph


def random_simple_graph(rng, n_max=10, p=0.45, directed=False, min_edges=0):
    """Random simple graph for cross-checking; retries until min_edges met."""
    while True:
        n = int(rng.integers(2, n_max + 1))
        if directed:
            pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        else:
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        mask = rng.random(len(pairs)) < p
        edges = [e for e, keep in zip(pairs, mask) if keep]
        if len(edges) >= min_edges:
            return Graph(n, np.array(edges, dtype=np.int64).reshape(-1, 2),
                         directed=directed)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
