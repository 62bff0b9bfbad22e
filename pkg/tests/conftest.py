"""Shared strategies and independent oracles for the test suite.

The oracles here recount everything the slow way (subset enumeration,
permutation search) so the fast paths are checked against code that shares
nothing with them.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import strategies as st

from girthfive.graphs import Graph, graph_from_edges, graph_from_numpy


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    return graph_from_edges(n, [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1])


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 10):
    n = draw(st.integers(min_n, max_n))
    mask = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return graph_from_mask(n, mask)


@st.composite
def graphs_with_pair(draw, min_n: int = 2, max_n: int = 10):
    g = draw(graphs(min_n, max_n))
    u = draw(st.integers(0, g.n - 2))
    v = draw(st.integers(u + 1, g.n - 1))
    return g, u, v


def fast_random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Vectorized G(n, p) for the bulk randomized checks."""
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return graph_from_numpy(upper | upper.T)


# -- independent oracles ---------------------------------------------------


def naive_triangles(g: Graph) -> int:
    return sum(
        1
        for a, b, c in combinations(range(g.n), 3)
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
    )


def naive_squares(g: Graph) -> int:
    count = 0
    for a, b, c, d in combinations(range(g.n), 4):
        for cyc in (
            ((a, b), (b, c), (c, d), (d, a)),
            ((a, b), (b, d), (d, c), (c, a)),
            ((a, c), (c, b), (b, d), (d, a)),
        ):
            if all(g.has_edge(x, y) for x, y in cyc):
                count += 1
    return count


def naive_score(g: Graph) -> int:
    return g.edge_count - naive_triangles(g) - naive_squares(g)


def brute_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    e2 = {frozenset(e) for e in g2.edges()}
    for p in permutations(range(g1.n)):
        if all(frozenset((p[u], p[v])) in e2 for u, v in g1.edges()):
            return True
    return False


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240801)
