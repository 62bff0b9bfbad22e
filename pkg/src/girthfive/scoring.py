"""The search objective and its ground-truth anchors.

The score of a graph is s(G) = e(G) - triangles(G) - squares(G). A graph is
feasible when it has no 3- or 4-cycles, in which case its score equals its
edge count. Every graph can be repaired to a feasible subgraph by deleting
one edge per remaining short cycle, which is why s(G) lower-bounds the best
feasible edge count at the same size: maximizing s over all graphs and
maximizing edges over feasible graphs have the same optimum.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, count_squares, count_triangles
from .reference_data import BEST_KNOWN, EXACT_MAX

#: Conjectured limit of edges/(n*sqrt(n)) for extremal feasible graphs.
CONJECTURED_DENSITY_LIMIT = 1.0 / (2.0 * math.sqrt(2.0))


@dataclass(frozen=True, slots=True)
class ScoreBreakdown:
    edges: int
    triangles: int
    squares: int

    @property
    def score(self) -> int:
        return self.edges - self.triangles - self.squares

    @property
    def feasible(self) -> bool:
        return self.triangles == 0 and self.squares == 0


@dataclass(frozen=True, slots=True)
class ReferenceEntry:
    """One row of the built-in best-known table."""

    n: int
    edges: int
    exact: bool
    graphs_found: int
    source: str


REFERENCE_TABLE: tuple[ReferenceEntry, ...] = tuple(
    ReferenceEntry(
        n=n,
        edges=e,
        exact=n <= EXACT_MAX,
        graphs_found=g,
        source="exact" if n <= EXACT_MAX else "incremental-tabu",
    )
    for n, e, g in BEST_KNOWN
)


def score(g: Graph) -> ScoreBreakdown:
    """Exact (edges, triangles, squares) breakdown."""
    return ScoreBreakdown(g.edge_count, count_triangles(g), count_squares(g))


def is_feasible(g: Graph) -> bool:
    """True iff g has no 3-cycles and no 4-cycles."""
    return count_triangles(g) == 0 and count_squares(g) == 0


def upper_bound(n: int) -> int:
    """floor(n * sqrt(n-1) / 2), the classical edge bound for feasible graphs.

    Evaluated as the largest m with (2m)^2 <= n^2 (n-1), so the floor never
    suffers a floating-point boundary error.
    """
    if n < 1:
        raise ValueError(f"node count must be positive, got {n}")
    return math.isqrt(n * n * (n - 1)) // 2


def reference_lookup(n: int) -> ReferenceEntry:
    """Best-known edge count for size n (table covers 1..200)."""
    if not 1 <= n <= len(REFERENCE_TABLE):
        raise ValueError(f"reference table covers sizes 1..{len(REFERENCE_TABLE)}, got {n}")
    entry = REFERENCE_TABLE[n - 1]
    assert entry.n == n
    return entry


def normalized_score(n: int, edges: int) -> float:
    """edges / (n * sqrt(n)), the scale on which the density limit is stated."""
    return edges / (n * math.sqrt(n))


def write_reference_csv(path) -> None:
    """Dump the built-in table as machine-readable CSV."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "edges", "exact", "graphs_found", "source"])
        for e in REFERENCE_TABLE:
            w.writerow([e.n, e.edges, int(e.exact), e.graphs_found, e.source])


def _edge_cycle_load(a: np.ndarray) -> tuple[np.ndarray, int, int]:
    """Per-pair count of short cycles through each existing edge.

    For an edge uv: triangles through it = codeg(u, v); 4-cycles through it =
    (# length-3 walks u->v) - deg(u) - deg(v) + 1, which removes the
    degenerate walks that revisit u or v.
    """
    af = a.astype(np.int64)
    a2 = af @ af
    a3 = a2 @ af
    deg = af.sum(axis=1)
    tri_edge = a2 * af
    sq_edge = (a3 - deg[:, None] - deg[None, :] + 1) * af
    tri_total = int(tri_edge.sum()) // 6
    diag = a2.copy()
    np.fill_diagonal(diag, 0)
    sq_total = int((diag * (diag - 1) // 2).sum()) // 4
    return tri_edge + sq_edge, tri_total, sq_total


def repair_to_feasible(g: Graph, rng: int | np.random.Generator = 0) -> Graph:
    """Delete edges until no 3- or 4-cycle remains.

    Deletes at most one edge per short cycle of the input, so the result
    keeps at least s(G) edges no matter which deletion order is taken. The
    edge on the most remaining short cycles is removed first (ties broken by
    the seeded rng), which tends to keep more edges than an arbitrary choice.
    """
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(rng)
    a = g.to_numpy()
    load, tri, sq = _edge_cycle_load(a)
    if tri == 0 and sq == 0:
        return g
    while tri > 0 or sq > 0:
        best = load.max()
        us, vs = np.nonzero(load == best)
        pick = int(rng.integers(us.size))
        u, v = int(us[pick]), int(vs[pick])
        a[u, v] = a[v, u] = False
        load, tri, sq = _edge_cycle_load(a)
    from .graphs import graph_from_numpy

    return graph_from_numpy(a)
