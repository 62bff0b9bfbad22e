"""The edge-flipping decision process as a reusable environment.

States are the simple graphs of one fixed size, actions are the C(n,2) node
pairs, the transition toggles the chosen pair, and an episode lasts exactly
H steps regardless of what it finds along the way (best-visited tracking
makes mid-episode optima harmless). The default reward is telescopic,
s(G') - s(G), so episode return equals s(G_H) - s(G_0); the terminal mode
pays s(G_H) once at the end and zero before.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graphs import FlipAction, Graph, flip, flip_delta, new_graph
from .scoring import score
from .sparse6 import decode_sparse6, encode_sparse6
from .store import BestGraphStore
from .tabu import as_rng

TELESCOPIC = "telescopic"
TERMINAL = "terminal"

#: Default horizons for empty starts, bucketed by size; curriculum starts
#: need far fewer steps.
_HORIZON_BUCKETS = ((20, 80), (40, 160), (60, 240), (80, 320))
_HORIZON_TOP = 434
CURRICULUM_HORIZON = 30


def default_horizon(n: int, *, curriculum: bool = False) -> int:
    if curriculum:
        return CURRICULUM_HORIZON
    for hi, h in _HORIZON_BUCKETS:
        if n <= hi:
            return h
    return _HORIZON_TOP


@dataclass(frozen=True, slots=True)
class EnvConfig:
    n: int
    horizon: int
    reward_mode: str = TELESCOPIC
    source: str = "empty"  # "empty" | "fixed" | "store"
    fixed_graph: Graph | None = None
    store: BestGraphStore | None = None
    k_max: int = 4

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.reward_mode not in (TELESCOPIC, TERMINAL):
            raise ValueError(f"unknown reward mode {self.reward_mode!r}")
        if self.source not in ("empty", "fixed", "store"):
            raise ValueError(f"unknown initial-state source {self.source!r}")
        if self.source == "fixed" and self.fixed_graph is None:
            raise ValueError("fixed source needs fixed_graph")
        if self.source == "store" and self.store is None:
            raise ValueError("store source needs a store")


@dataclass(frozen=True, slots=True)
class StepResult:
    state: Graph
    reward: int
    step_index: int  # number of steps taken so far, including this one
    done: bool


@dataclass(slots=True)
class EpisodeTranscript:
    initial: Graph
    actions: list[FlipAction]
    rewards: list[int]
    final: Graph
    best_graph: Graph
    best_score: int

    def replay(self) -> Graph:
        g = self.initial
        for a in self.actions:
            g = flip(g, a)
        return g

    def to_json(self) -> str:
        return json.dumps(
            {
                "initial": encode_sparse6(self.initial).decode("ascii"),
                "actions": [[a.u, a.v] for a in self.actions],
                "rewards": self.rewards,
                "final": encode_sparse6(self.final).decode("ascii"),
                "best_score": self.best_score,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "EpisodeTranscript":
        obj = json.loads(line)
        initial = decode_sparse6(obj["initial"])
        actions = [FlipAction(u, v) for u, v in obj["actions"]]
        g = initial
        best_g, best_s = initial, score(initial).score
        for a in actions:
            g = flip(g, a)
            s = score(g).score
            if s > best_s:
                best_g, best_s = g, s
        return cls(initial, actions, list(obj["rewards"]), g, best_g, best_s)


def reset(cfg: EnvConfig, rng: int | np.random.Generator) -> Graph:
    """The episode's initial state per the configured source."""
    if cfg.source == "empty":
        return new_graph(cfg.n)
    if cfg.source == "fixed":
        g = cfg.fixed_graph
        assert g is not None
        if g.n != cfg.n:
            raise ValueError(f"fixed graph has size {g.n}, environment is {cfg.n}")
        return g
    assert cfg.store is not None
    g, _ = cfg.store.sample_seed(cfg.n, cfg.k_max, as_rng(rng))
    return g


def step(state: Graph, action: FlipAction, cfg: EnvConfig, step_index: int) -> StepResult:
    """Apply one flip; `step_index` counts steps already taken (0-based)."""
    if step_index >= cfg.horizon:
        raise ValueError(f"episode is over after {cfg.horizon} steps")
    if state.n != cfg.n:
        raise ValueError(f"state has size {state.n}, environment is {cfg.n}")
    if action.v >= cfg.n:
        raise ValueError(f"action ({action.u}, {action.v}) out of range for n={cfg.n}")
    nxt = flip(state, action)
    taken = step_index + 1
    done = taken == cfg.horizon
    if cfg.reward_mode == TELESCOPIC:
        reward = flip_delta(state, action).score
    else:
        reward = score(nxt).score if done else 0
    return StepResult(nxt, reward, taken, done)


Policy = Callable[[Graph, np.random.Generator], FlipAction]


def run_episode(
    cfg: EnvConfig, policy: Policy, rng: int | np.random.Generator
) -> EpisodeTranscript:
    """Exactly H steps of the policy; tracks the best of all H+1 states.

    The running score is maintained from the per-step deltas; one full
    recount per episode (at reset) is all the counting needed.
    """
    rng = as_rng(rng)
    g = reset(cfg, rng)
    initial = g
    cur = score(g).score
    best_g, best_s = g, cur
    actions: list[FlipAction] = []
    rewards: list[int] = []
    for i in range(cfg.horizon):
        a = policy(g, rng)
        cur += flip_delta(g, a).score
        result = step(g, a, cfg, i)
        g = result.state
        actions.append(a)
        rewards.append(result.reward)
        if cur > best_s:
            best_g, best_s = g, cur
    return EpisodeTranscript(initial, actions, rewards, g, best_g, best_s)


def random_policy(g: Graph, rng: np.random.Generator) -> FlipAction:
    u = int(rng.integers(g.n - 1))
    v = int(rng.integers(u + 1, g.n))
    return FlipAction(u, v)


def greedy_delta_policy(g: Graph, rng: np.random.Generator) -> FlipAction:
    """Uniform argmax of the one-step score change."""
    best: list[FlipAction] = []
    top = None
    for u in range(g.n - 1):
        for v in range(u + 1, g.n):
            d = flip_delta(g, FlipAction(u, v)).score
            if top is None or d > top:
                top, best = d, [FlipAction(u, v)]
            elif d == top:
                best.append(FlipAction(u, v))
    return best[int(rng.integers(len(best)))]


def write_transcripts(transcripts, path) -> None:
    with open(path, "w") as fh:
        for t in transcripts:
            fh.write(t.to_json() + "\n")
