"""Per-size search workers sharing one best-graph store (the curriculum).

A worker for size n repeatedly seeds a tabu run from a best graph of size
n-k (k sampled uniformly among the nonempty slots within the back-step
limit), padded with k isolated nodes, and submits the run's best graph back
to the store. Workers at the bottom of the range, with no donors below
them, fall back to the empty graph. A campaign runs one or more workers per
size in [a, b] concurrently until a wall-clock budget expires, checkpoints
the store on every improvement, and reports each size against the built-in
best-known table.
"""

from __future__ import annotations

import json
import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from math import comb
from pathlib import Path

import numpy as np

from .graphs import Graph, new_graph
from .scoring import normalized_score, reference_lookup
from .store import BestGraphStore, EmptySlotError, SubmitOutcome
from .tabu import TabuConfig, as_rng, tabu_search


@dataclass(frozen=True, slots=True)
class CampaignConfig:
    size_lo: int
    size_hi: int
    k_max: int = 4
    tabu: TabuConfig = field(default_factory=TabuConfig)
    workers_per_size: int = 32
    budget_seconds: float | None = None
    runs_per_worker: int | None = None
    seed_archive: str | Path | None = None
    archive_dir: str | Path | None = None
    sync_every: int = 25
    seed: int = 0

    def __post_init__(self) -> None:
        if self.size_lo > self.size_hi:
            raise ValueError(f"empty size range {self.size_lo}..{self.size_hi}")
        if self.size_lo < 1:
            raise ValueError("sizes start at 1")
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if self.workers_per_size < 1:
            raise ValueError("workers_per_size must be >= 1")
        if self.budget_seconds is None and self.runs_per_worker is None:
            raise ValueError("either budget_seconds or runs_per_worker is required")


def _sized_tabu(cfg: TabuConfig, n: int) -> TabuConfig:
    """Clamp the ban tenure for tiny sizes where h < C(n,2) cannot hold."""
    limit = comb(n, 2) - 1
    if cfg.history_size <= limit:
        return cfg
    return replace(cfg, history_size=max(0, limit))


@dataclass(slots=True)
class WorkerStats:
    n: int
    runs: int = 0
    improved: int = 0
    added: int = 0


def worker_loop(
    store: BestGraphStore,
    n: int,
    tabu_cfg: TabuConfig,
    k_max: int,
    rng: int | np.random.Generator,
    *,
    deadline: float | None = None,
    max_runs: int | None = None,
    archive_dir: str | Path | None = None,
    sync_every: int = 25,
    fallback_empty: bool = True,
) -> WorkerStats:
    """Sample seed -> tabu search -> submit, until the budget runs out.

    Every accepted improvement checkpoints the slot to `archive_dir`; the
    worker also periodically pulls donor-slot improvements flushed by other
    processes sharing the same directory.
    """
    rng = as_rng(rng)
    stats = WorkerStats(n)
    if n == 1:
        # nothing to search: the single-node graph is optimal
        store.submit(1, new_graph(1), {"method": "trivial"})
        if archive_dir:
            store.flush(archive_dir, [1])
        return stats
    cfg = _sized_tabu(tabu_cfg, n)
    while True:
        if deadline is not None and time.monotonic() >= deadline:
            break
        if max_runs is not None and stats.runs >= max_runs:
            break
        if archive_dir and sync_every and stats.runs and stats.runs % sync_every == 0:
            donors = [m for m in range(max(1, n - k_max), n) ]
            store.sync_from_archive(archive_dir, donors)
        try:
            g0, seed_info = store.sample_seed(n, k_max, rng)
        except EmptySlotError:
            if not fallback_empty:
                raise
            g0, seed_info = new_graph(n), {"seed_size": None, "k": None}
        run_seed = int(rng.integers(2**63))
        out = tabu_search(g0, cfg, np.random.default_rng(run_seed))
        provenance = {
            "method": "incremental-tabu",
            "rng_seed": run_seed,
            "history_size": cfg.history_size,
            "iterations": cfg.iterations,
            **seed_info,
        }
        outcome = store.submit(n, out.best_graph, provenance)
        stats.runs += 1
        if outcome is SubmitOutcome.IMPROVED:
            stats.improved += 1
        elif outcome is SubmitOutcome.ADDED:
            stats.added += 1
        if outcome in (SubmitOutcome.IMPROVED, SubmitOutcome.ADDED) and archive_dir:
            store.flush(archive_dir, [n])
    return stats


@dataclass(slots=True)
class ReportRow:
    n: int
    best_score: int | None
    graph_count: int
    reference: int | None
    gap: int | None
    normalized: float | None


@dataclass(slots=True)
class CampaignReport:
    rows: list[ReportRow]
    config: dict

    def to_text(self) -> str:
        lines = [
            f"{'n':>5} {'score':>7} {'graphs':>7} {'reference':>10} {'gap':>5} {'e/(n*sqrt(n))':>14}"
        ]
        for r in self.rows:
            lines.append(
                f"{r.n:>5} {r.best_score if r.best_score is not None else '-':>7} "
                f"{r.graph_count:>7} "
                f"{r.reference if r.reference is not None else '-':>10} "
                f"{r.gap if r.gap is not None else '-':>5} "
                f"{r.normalized if r.normalized is not None else float('nan'):>14.4f}"
            )
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {"config": self.config, "rows": [vars(r) for r in self.rows]},
            indent=2,
            sort_keys=True,
        )


def build_report(store: BestGraphStore, sizes: list[int], config: dict) -> CampaignReport:
    rows = []
    for n in sizes:
        best = store.best_score(n)
        count = len(store.records(n))
        try:
            ref = reference_lookup(n).edges
        except ValueError:
            ref = None
        gap = (ref - best) if (ref is not None and best is not None) else None
        norm = normalized_score(n, best) if best is not None else None
        rows.append(ReportRow(n, best, count, ref, gap, norm))
    return CampaignReport(rows, config)


def campaign_run(cfg: CampaignConfig) -> tuple[BestGraphStore, CampaignReport]:
    """Run (size_hi - size_lo + 1) x workers_per_size workers to the budget."""
    store = BestGraphStore()
    if cfg.seed_archive:
        store.load_archive(cfg.seed_archive)
    deadline = (
        time.monotonic() + cfg.budget_seconds if cfg.budget_seconds is not None else None
    )
    sizes = list(range(cfg.size_lo, cfg.size_hi + 1))
    root = as_rng(cfg.seed)
    streams = root.spawn(len(sizes) * cfg.workers_per_size)
    jobs = []
    with ThreadPoolExecutor(max_workers=len(streams)) as pool:
        for i, n in enumerate(sizes):
            for w in range(cfg.workers_per_size):
                jobs.append(
                    pool.submit(
                        worker_loop,
                        store,
                        n,
                        cfg.tabu,
                        cfg.k_max,
                        streams[i * cfg.workers_per_size + w],
                        deadline=deadline,
                        max_runs=cfg.runs_per_worker,
                        archive_dir=cfg.archive_dir,
                        sync_every=cfg.sync_every,
                    )
                )
        for job in jobs:
            job.result()
    if cfg.archive_dir:
        store.flush(cfg.archive_dir)
    config = {
        "size_lo": cfg.size_lo,
        "size_hi": cfg.size_hi,
        "k_max": cfg.k_max,
        "history_size": cfg.tabu.history_size,
        "iterations": cfg.tabu.iterations,
        "workers_per_size": cfg.workers_per_size,
        "budget_seconds": cfg.budget_seconds,
        "runs_per_worker": cfg.runs_per_worker,
        "seed": cfg.seed,
    }
    return store, build_report(store, sizes, config)


def ascending_sweep(
    store: BestGraphStore,
    sizes: list[int],
    runs_per_size: int,
    tabu_cfg: TabuConfig,
    k_max: int,
    seed: int,
    *,
    paired_run_seeds: bool = False,
) -> dict[int, int]:
    """One curriculum pass: finish each size's budget before the next.

    With `paired_run_seeds` the tabu seed of run j at size n is a pure
    function of (seed, n, j), so a sweep and a plain empty-start arm with
    the same seeds form a common-random-numbers pair: wherever the sweep
    falls back to an empty start it reproduces the empty arm exactly.
    """
    best: dict[int, int] = {}
    for n in sizes:
        if n == 1:
            store.submit(1, new_graph(1), {"method": "trivial"})
            best[1] = 0
            continue
        cfg = _sized_tabu(tabu_cfg, n)
        sampler = np.random.default_rng([seed, n, 0xC0FFEE])
        for j in range(runs_per_size):
            try:
                g0, info = store.sample_seed(n, k_max, sampler)
            except EmptySlotError:
                g0, info = new_graph(n), {"seed_size": None, "k": None}
            run_rng = (
                np.random.default_rng([seed, n, j])
                if paired_run_seeds
                else sampler.spawn(1)[0]
            )
            out = tabu_search(g0, cfg, run_rng)
            store.submit(
                n,
                out.best_graph,
                {"method": "incremental-tabu", "run": j, **info},
            )
        best[n] = store.best_score(n) or 0
    return best


def empty_start_scores(
    sizes: list[int], runs_per_size: int, tabu_cfg: TabuConfig, seed: int
) -> dict[int, int]:
    """Plain restart baseline with the same per-(size, run) seed layout."""
    best: dict[int, int] = {}
    for n in sizes:
        cfg = _sized_tabu(tabu_cfg, n)
        top = None
        for j in range(runs_per_size):
            out = tabu_search(new_graph(n), cfg, np.random.default_rng([seed, n, j]))
            top = out.best_score if top is None else max(top, out.best_score)
        best[n] = top or 0
    return best


def paired_curriculum_experiment(
    sizes: list[int],
    runs_per_size: int,
    tabu_cfg: TabuConfig,
    k_max: int,
    seeds: list[int],
) -> dict[int, tuple[int, int]]:
    """Best scores of (curriculum, empty-start) per size with equal flip
    budgets, merged over paired seeds."""
    inc: dict[int, int] = {}
    emp: dict[int, int] = {}
    for seed in seeds:
        store = BestGraphStore()
        sweep = ascending_sweep(
            store, sizes, runs_per_size, tabu_cfg, k_max, seed, paired_run_seeds=True
        )
        plain = empty_start_scores(sizes, runs_per_size, tabu_cfg, seed)
        for n in sizes:
            inc[n] = max(inc.get(n, -(10**9)), sweep[n])
            emp[n] = max(emp.get(n, -(10**9)), plain[n])
    return {n: (inc[n], emp[n]) for n in sizes}
