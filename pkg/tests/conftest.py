import random

import pytest

from rewire import Graph


@pytest.fixture
def g8() -> Graph:
    """Two hubs with three leaves each plus one leaf-leaf bridge."""
    return Graph(
        8,
        [(0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7), (2, 5)],
        labels=["h1", "h2", "l1", "l2", "l3", "l4", "l5", "l6"],
    )


@pytest.fixture
def triangle() -> Graph:
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def p4() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def star3() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def triangle_pendant() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


def random_graph(rng: random.Random, n: int, m: int) -> Graph:
    """Uniform simple graph used by the property suites."""
    edges = set()
    limit = n * (n - 1) // 2
    m = min(m, limit)
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph(n, edges)
