"""Action-tabu local search over single-edge flips.

Each iteration scores every one of the C(n,2) flips exactly, excludes the
pairs flipped during the last h iterations, moves to a uniformly chosen
argmax flip, and remembers the best graph ever visited. Banning recent
*actions* rather than recent states needs only a FIFO of pairs and makes an
iteration one pass of dense linear algebra:

with A the adjacency matrix, A2 = A^2 and A3 = A^3 give for every pair the
codegree (triangle change) and the length-3 walk count (square change, after
removing degenerate walks through the flipped pair), so the score change of
all flips is a couple of matrix products plus elementwise work.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .graphs import FlipAction, Graph, counts_from_numpy

RngLike = "int | np.random.Generator"


def as_rng(rng: int | np.random.Generator) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


@dataclass(frozen=True, slots=True)
class TabuConfig:
    """history_size is the ban tenure h; one run lasts `iterations` flips."""

    history_size: int = 5
    iterations: int = 1000
    collect_trace: bool = False
    integrity_check_every: int = 0  # recount from scratch every k steps if > 0

    def __post_init__(self) -> None:
        if self.history_size < 0:
            raise ValueError("history_size must be >= 0")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


@dataclass(slots=True)
class SearchOutcome:
    best_graph: Graph
    best_score: int
    iterations_used: int
    score_trace: list[int] | None = None
    action_trace: list[FlipAction] | None = None


class TabuState:
    """Fixed-capacity FIFO of recently flipped pairs with O(1) membership."""

    def __init__(self, capacity: int):
        if capacity < 0:
            raise ValueError("tabu capacity must be >= 0")
        self.capacity = capacity
        self._queue: deque[FlipAction] = deque()
        self._members: set[FlipAction] = set()

    def __contains__(self, action: FlipAction) -> bool:
        return action in self._members

    def __len__(self) -> int:
        return len(self._queue)

    def push(self, action: FlipAction) -> FlipAction | None:
        """Insert an action, evicting and returning the oldest when full."""
        evicted = None
        if self.capacity == 0:
            return None
        if len(self._queue) == self.capacity:
            evicted = self._queue.popleft()
            self._members.discard(evicted)
        self._queue.append(action)
        self._members.add(action)
        return evicted

    def actions(self) -> tuple[FlipAction, ...]:
        return tuple(self._queue)


_PAIR_CACHE: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(iu, iv, flat-index lookup) for the upper-triangle pair ordering."""
    cached = _PAIR_CACHE.get(n)
    if cached is None:
        iu, iv = np.triu_indices(n, 1)
        lookup = np.full((n, n), -1, dtype=np.int64)
        lookup[iu, iv] = np.arange(iu.size)
        lookup[iv, iu] = np.arange(iu.size)
        cached = (iu, iv, lookup)
        _PAIR_CACHE[n] = cached
    return cached


class _Engine:
    """Mutable search state: adjacency, counts, and per-pair flip deltas.

    float32 is exact here: every intermediate (codegrees, walk counts,
    degree sums) stays far below 2^24 at n <= 256.
    """

    def __init__(self, g: Graph):
        self.n = g.n
        self.rows = list(g.rows)
        self.adj = g.to_numpy()
        self.af = self.adj.astype(np.float32)
        self.deg = self.af.sum(axis=1)
        self.iu, self.iv, self.lookup = _pairs(g.n)
        self.edge_flat = self.adj[self.iu, self.iv].copy()
        tri, sq = counts_from_numpy(self.adj)
        self.edges = g.edge_count
        self.tri = tri
        self.sq = sq
        self._a2 = None
        self._a3 = None

    @property
    def score(self) -> int:
        return self.edges - self.tri - self.sq

    def eval_deltas(self) -> np.ndarray:
        """Score change of every pair flip, in pair order."""
        af = self.af
        a2 = af @ af
        a3 = a2 @ af
        self._a2 = a2[self.iu, self.iv]
        self._a3 = a3[self.iu, self.iv]
        dsum = self.deg[self.iu] + self.deg[self.iv]
        return np.where(
            self.edge_flat,
            self._a2 + self._a3 - dsum,
            1.0 - self._a2 - self._a3,
        )

    def apply(self, flat: int) -> tuple[int, int]:
        """Flip the pair at flat index; returns (u, v). Uses the matrices
        from the eval_deltas call of this iteration."""
        u = int(self.iu[flat])
        v = int(self.iv[flat])
        a2uv = int(self._a2[flat])
        a3uv = int(self._a3[flat])
        if self.edge_flat[flat]:
            self.edges -= 1
            self.tri -= a2uv
            self.sq -= a3uv - int(self.deg[u]) - int(self.deg[v]) + 1
            val = 0.0
            self.deg[u] -= 1.0
            self.deg[v] -= 1.0
        else:
            self.edges += 1
            self.tri += a2uv
            self.sq += a3uv
            val = 1.0
            self.deg[u] += 1.0
            self.deg[v] += 1.0
        self.adj[u, v] = self.adj[v, u] = bool(val)
        self.af[u, v] = self.af[v, u] = val
        self.edge_flat[flat] = bool(val)
        self.rows[u] ^= 1 << v
        self.rows[v] ^= 1 << u
        return u, v

    def snapshot(self) -> Graph:
        return Graph(self.n, tuple(self.rows), self.edges)

    def recount(self) -> tuple[int, int, int]:
        tri, sq = counts_from_numpy(self.adj)
        return int(self.adj.sum()) // 2, tri, sq


def tabu_search(
    g0: Graph, cfg: TabuConfig, rng: int | np.random.Generator
) -> SearchOutcome:
    """Run `cfg.iterations` tabu flips from g0; the best visited graph
    (including g0 itself) is returned. Deterministic given (g0, cfg, seed)."""
    npairs = comb(g0.n, 2)
    if cfg.history_size >= npairs:
        raise ValueError(
            f"history_size {cfg.history_size} must be < C(n,2) = {npairs}"
        )
    rng = as_rng(rng)
    eng = _Engine(g0)
    best_graph = g0
    best_score = eng.score
    banned: deque[int] = deque()
    trace = [] if cfg.collect_trace else None
    actions = [] if cfg.collect_trace else None

    for it in range(1, cfg.iterations + 1):
        vals = eng.eval_deltas()
        if banned:
            vals[list(banned)] = -np.inf
        top = vals.max()
        ties = np.flatnonzero(vals == top)
        flat = int(ties[rng.integers(ties.size)])
        u, v = eng.apply(flat)
        if cfg.history_size > 0:
            if len(banned) == cfg.history_size:
                banned.popleft()
            banned.append(flat)
        if eng.score > best_score:
            best_score = eng.score
            best_graph = eng.snapshot()
        if actions is not None:
            actions.append(FlipAction(u, v))
        if trace is not None:
            trace.append(best_score)
        if cfg.integrity_check_every and it % cfg.integrity_check_every == 0:
            edges, tri, sq = eng.recount()
            if (edges, tri, sq) != (eng.edges, eng.tri, eng.sq):
                raise AssertionError(
                    f"incremental counts diverged at iteration {it}: "
                    f"tracked {(eng.edges, eng.tri, eng.sq)} vs recount {(edges, tri, sq)}"
                )

    return SearchOutcome(best_graph, best_score, cfg.iterations, trace, actions)


def tabu_step(
    g: Graph, tabu: TabuState, rng: int | np.random.Generator
) -> tuple[Graph, FlipAction]:
    """One Algorithm-1 step on an immutable graph with an explicit tabu list.

    The chosen action is pushed into the tabu FIFO (evicting the oldest
    entry when full).
    """
    npairs = comb(g.n, 2)
    if len(tabu) >= npairs:
        raise ValueError("tabu list as large as the action set; no valid action")
    rng = as_rng(rng)
    eng = _Engine(g)
    vals = eng.eval_deltas()
    if len(tabu):
        idx = [int(eng.lookup[a.u, a.v]) for a in tabu.actions()]
        vals[idx] = -np.inf
    top = vals.max()
    ties = np.flatnonzero(vals == top)
    flat = int(ties[rng.integers(ties.size)])
    u, v = eng.apply(flat)
    action = FlipAction(u, v)
    tabu.push(action)
    return eng.snapshot(), action


def restart_loop(
    n: int,
    cfg: TabuConfig,
    restarts: int,
    rng: int | np.random.Generator,
    initial: Graph | None = None,
) -> SearchOutcome:
    """Independent tabu runs merged by best score (first winner on ties).

    Each restart begins from `initial` (the empty graph by default) with its
    own spawned rng stream, so the whole loop is deterministic per seed.
    """
    from .graphs import new_graph

    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = as_rng(rng)
    g0 = initial if initial is not None else new_graph(n)
    if g0.n != n:
        raise ValueError(f"initial graph has size {g0.n}, expected {n}")
    best: SearchOutcome | None = None
    total = 0
    for child in rng.spawn(restarts):
        out = tabu_search(g0, cfg, child)
        total += out.iterations_used
        if best is None or out.best_score > best.best_score:
            best = out
    assert best is not None
    best.iterations_used = total
    return best
