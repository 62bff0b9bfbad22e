"""Bitset-backed simple undirected graphs and single-flip score deltas.

A graph on nodes 0..n-1 is stored as one Python integer per node: bit v of
``rows[u]`` is set iff uv is an edge. This keeps the hot operations (common
neighbourhoods, flip deltas) down to a few AND/popcount instructions even at
the largest supported size, and makes graphs cheap immutable values that can
be shared freely between worker threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

MAX_NODES = 256


@dataclass(frozen=True, slots=True)
class FlipAction:
    """Unordered node pair (u, v) with u < v: toggle the edge uv."""

    u: int
    v: int

    def __post_init__(self) -> None:
        if not 0 <= self.u < self.v:
            raise ValueError(f"flip action needs 0 <= u < v, got ({self.u}, {self.v})")

    @classmethod
    def of(cls, a: int, b: int) -> "FlipAction":
        """Build the canonical action for an unordered pair."""
        return cls(a, b) if a < b else cls(b, a)


@dataclass(frozen=True, slots=True)
class ScoreDelta:
    """Component-wise change in (edges, triangles, squares) caused by one flip."""

    edges: int
    triangles: int
    squares: int

    @property
    def score(self) -> int:
        return self.edges - self.triangles - self.squares


@dataclass(frozen=True, slots=True)
class Graph:
    """Immutable simple undirected graph; ``rows[u]`` is the neighbour bitset of u."""

    n: int
    rows: tuple[int, ...]
    edge_count: int

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def neighbors(self, u: int) -> Iterator[int]:
        m = self.rows[u]
        while m:
            b = m & -m
            yield b.bit_length() - 1
            m ^= b

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v."""
        for u in range(self.n):
            m = self.rows[u] >> (u + 1)
            while m:
                b = m & -m
                yield u, u + 1 + b.bit_length() - 1
                m ^= b

    def to_numpy(self) -> np.ndarray:
        """Dense boolean adjacency matrix."""
        a = np.zeros((self.n, self.n), dtype=bool)
        for u in range(self.n):
            m = self.rows[u]
            while m:
                b = m & -m
                a[u, b.bit_length() - 1] = True
                m ^= b
        return a

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, edges={self.edge_count})"


def new_graph(n: int) -> Graph:
    """The empty graph on n nodes."""
    if not 1 <= n <= MAX_NODES:
        raise ValueError(f"node count must be in 1..{MAX_NODES}, got {n}")
    return Graph(n, (0,) * n, 0)


def graph_from_rows(n: int, rows: Iterable[int]) -> Graph:
    """Build a graph from adjacency bitsets, validating the invariants."""
    rows = tuple(rows)
    if not 1 <= n <= MAX_NODES:
        raise ValueError(f"node count must be in 1..{MAX_NODES}, got {n}")
    if len(rows) != n:
        raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
    total = 0
    for u, m in enumerate(rows):
        if m >> n:
            raise ValueError(f"row {u} references nodes >= {n}")
        if (m >> u) & 1:
            raise ValueError(f"self-loop at node {u}")
        total += m.bit_count()
    for u in range(n):
        m = rows[u]
        while m:
            b = m & -m
            v = b.bit_length() - 1
            if not (rows[v] >> u) & 1:
                raise ValueError(f"adjacency not symmetric at ({u}, {v})")
            m ^= b
    return Graph(n, rows, total // 2)


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on n nodes from an edge list (duplicates rejected)."""
    if not 1 <= n <= MAX_NODES:
        raise ValueError(f"node count must be in 1..{MAX_NODES}, got {n}")
    rows = [0] * n
    count = 0
    for a, b in edges:
        if a == b:
            raise ValueError(f"self-loop at node {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"edge ({a}, {b}) out of range for n={n}")
        if (rows[a] >> b) & 1:
            raise ValueError(f"duplicate edge ({a}, {b})")
        rows[a] |= 1 << b
        rows[b] |= 1 << a
        count += 1
    return Graph(n, tuple(rows), count)


def graph_from_numpy(a: np.ndarray) -> Graph:
    """Build a graph from a dense 0/1 adjacency matrix."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"adjacency matrix must be square, got {a.shape}")
    rows = []
    for u in range(n):
        m = 0
        for v in np.flatnonzero(a[u]):
            m |= 1 << int(v)
        rows.append(m)
    return graph_from_rows(n, rows)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, p) sample."""
    rows = [0] * n
    count = 0
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                count += 1
    return Graph(n, tuple(rows), count)


def flip(g: Graph, e: FlipAction) -> Graph:
    """Toggle the edge e.u-e.v; all other pairs are untouched."""
    if e.v >= g.n:
        raise ValueError(f"action ({e.u}, {e.v}) out of range for n={g.n}")
    rows = list(g.rows)
    rows[e.u] ^= 1 << e.v
    rows[e.v] ^= 1 << e.u
    delta = 1 if (rows[e.u] >> e.v) & 1 else -1
    return Graph(g.n, tuple(rows), g.edge_count + delta)


def pad_nodes(g: Graph, k: int) -> Graph:
    """Append k isolated nodes; existing adjacency and score are unchanged."""
    if k < 0:
        raise ValueError("cannot pad a negative number of nodes")
    if g.n + k > MAX_NODES:
        raise ValueError(f"padding to {g.n + k} nodes exceeds the {MAX_NODES} ceiling")
    if k == 0:
        return g
    return Graph(g.n + k, g.rows + (0,) * k, g.edge_count)


def count_triangles(g: Graph) -> int:
    """Number of distinct 3-cycles.

    Each edge uv lies on exactly codeg(u, v) triangles, and each triangle is
    seen by its three edges, so the total is one third of the per-edge sum.
    """
    rows = g.rows
    total = 0
    for u, v in g.edges():
        total += (rows[u] & rows[v]).bit_count()
    return total // 3


def count_squares(g: Graph) -> int:
    """Number of distinct 4-cycles.

    A 4-cycle is determined by its two diagonal pairs; each unordered pair
    {u, v} contributes C(codeg(u, v), 2) cycles and every cycle is counted by
    both of its diagonals, so the total is half the pair sum.
    """
    rows = g.rows
    total = 0
    for u in range(g.n - 1):
        ru = rows[u]
        for v in range(u + 1, g.n):
            c = (ru & rows[v]).bit_count()
            total += c * (c - 1) // 2
    return total // 2


def flip_delta(g: Graph, e: FlipAction) -> ScoreDelta:
    """Exact change of (edges, triangles, squares) for flipping e.

    Computed from the current graph only, without materialising the flip:
    the triangle change is the codegree of the endpoints, and the square
    change counts the u-x-y-v paths of length 3 that avoid the flipped pair
    itself (x != v on u's side, y != u on v's side).
    """
    u, v = e.u, e.v
    if v >= g.n:
        raise ValueError(f"action ({u}, {v}) out of range for n={g.n}")
    rows = g.rows
    ru, rv = rows[u], rows[v]
    codeg = (ru & rv).bit_count()
    adding = not (ru >> v) & 1
    not_u = ~(1 << u)
    paths = 0
    m = ru & ~(1 << v)
    while m:
        b = m & -m
        x = b.bit_length() - 1
        paths += (rows[x] & rv & not_u).bit_count()
        m ^= b
    if adding:
        return ScoreDelta(1, codeg, paths)
    return ScoreDelta(-1, -codeg, -paths)


def counts_from_numpy(a: np.ndarray) -> tuple[int, int]:
    """(triangles, squares) for a dense 0/1 adjacency matrix.

    Matrix route: tr(A^3) = 6 * triangles; the square count comes from the
    codegree matrix A^2 with its diagonal dropped.
    """
    af = a.astype(np.int64)
    a2 = af @ af
    tri = int(np.trace(a2 @ af)) // 6
    np.fill_diagonal(a2, 0)
    sq = int((a2 * (a2 - 1) // 2).sum()) // 4
    return tri, sq
