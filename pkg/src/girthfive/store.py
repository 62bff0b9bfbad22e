"""Shared per-size archive of the best graphs found so far.

Each size slot holds the set of highest-scoring graphs seen, deduplicated
by canonical certificate: a strictly better candidate replaces the slot, an
equal-scoring new isomorphism class is added, everything else is dropped.
Slot updates are serialized by one lock (certificates are computed outside
it), so a slot's best score never decreases no matter how many workers
submit concurrently.
"""

from __future__ import annotations

import base64
import enum
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .archive import GraphRecord, archive_read, archive_write, record_from_graph
from .canon import canonical_certificate
from .graphs import Graph, pad_nodes
from .scoring import score, upper_bound


class BoundViolation(AssertionError):
    """A feasible graph beat the proven edge bound; something is deeply wrong."""


class EmptySlotError(LookupError):
    """No donor slot available for seeding."""


class SubmitOutcome(enum.Enum):
    IMPROVED = "improved"  # strictly better score: slot replaced
    ADDED = "added"  # same score, new isomorphism class
    DUPLICATE = "duplicate"  # same score, certificate already present
    REJECTED = "rejected"  # lower score


@dataclass(slots=True)
class _Slot:
    best_score: int
    entries: dict[bytes, tuple[Graph, GraphRecord]]
    version: int = 0


class BestGraphStore:
    """In-process store; persistence goes through the archive format."""

    def __init__(self) -> None:
        self._slots: dict[int, _Slot] = {}
        self._lock = threading.Lock()
        self._flush_lock = threading.Lock()

    # -- queries ---------------------------------------------------------

    def sizes(self) -> list[int]:
        with self._lock:
            return sorted(self._slots)

    def best_score(self, n: int) -> int | None:
        with self._lock:
            slot = self._slots.get(n)
            return slot.best_score if slot else None

    def version(self, n: int) -> int:
        with self._lock:
            slot = self._slots.get(n)
            return slot.version if slot else 0

    def records(self, n: int) -> tuple[GraphRecord, ...]:
        with self._lock:
            slot = self._slots.get(n)
            return tuple(rec for _, rec in slot.entries.values()) if slot else ()

    def graphs(self, n: int) -> tuple[Graph, ...]:
        with self._lock:
            slot = self._slots.get(n)
            return tuple(g for g, _ in slot.entries.values()) if slot else ()

    # -- updates ---------------------------------------------------------

    def submit(
        self, n: int, candidate: Graph, provenance: Mapping | None = None
    ) -> SubmitOutcome:
        """Offer a size-n graph; returns what happened to it."""
        if candidate.n != n:
            raise ValueError(f"candidate has size {candidate.n}, slot is {n}")
        br = score(candidate)
        if br.feasible and br.edges > upper_bound(n):
            raise BoundViolation(
                f"feasible graph with {br.edges} edges at n={n} exceeds the "
                f"bound {upper_bound(n)}"
            )
        current = self.best_score(n)
        if current is not None and br.score < current:
            return SubmitOutcome.REJECTED
        # certificate work happens outside the lock; re-check inside
        cert = canonical_certificate(candidate)
        rec = record_from_graph(candidate, provenance, certificate=cert)
        with self._lock:
            slot = self._slots.get(n)
            if slot is None:
                self._slots[n] = _Slot(br.score, {cert: (candidate, rec)}, version=1)
                return SubmitOutcome.IMPROVED
            if br.score > slot.best_score:
                slot.best_score = br.score
                slot.entries = {cert: (candidate, rec)}
                slot.version += 1
                return SubmitOutcome.IMPROVED
            if br.score == slot.best_score:
                if cert in slot.entries:
                    return SubmitOutcome.DUPLICATE
                slot.entries[cert] = (candidate, rec)
                slot.version += 1
                return SubmitOutcome.ADDED
            return SubmitOutcome.REJECTED

    # -- seeding ---------------------------------------------------------

    def sample_seed(
        self, n: int, k_max: int, rng: np.random.Generator
    ) -> tuple[Graph, dict]:
        """Pick a donor of size n-k (k uniform over nonempty slots within
        1..k_max), pad with k isolated nodes, and report the choice."""
        with self._lock:
            ks = [
                k
                for k in range(1, k_max + 1)
                if n - k >= 1 and self._slots.get(n - k) and self._slots[n - k].entries
            ]
            if not ks:
                raise EmptySlotError(
                    f"no nonempty donor slot in sizes {max(1, n - k_max)}..{n - 1}"
                )
            k = int(ks[rng.integers(len(ks))])
            entries = list(self._slots[n - k].entries.values())
        graph, rec = entries[int(rng.integers(len(entries)))]
        seeded = pad_nodes(graph, k)
        info = {
            "seed_size": n - k,
            "k": k,
            "seed_score": rec.score,
            "seed_certificate": rec.certificate,
        }
        return seeded, info

    # -- persistence -----------------------------------------------------

    def flush(self, directory: str | Path, sizes: Iterable[int] | None = None) -> None:
        """Write the given slots (all by default) in the archive format.

        Serialized per store: the shared manifest is read-modify-write.
        """
        targets = list(sizes) if sizes is not None else self.sizes()
        slices = {n: list(self.records(n)) for n in targets if self.records(n)}
        if slices:
            with self._flush_lock:
                archive_write(slices, directory)

    def load_archive(self, directory: str | Path, sizes: Iterable[int] | None = None) -> int:
        """Submit every archived record into the store; returns how many
        records were accepted (improved or added)."""
        accepted = 0
        for n, records in archive_read(directory, sizes).items():
            for rec in records:
                cert = base64.b64decode(rec.certificate)
                out = self._submit_record(n, rec.graph(), rec, cert)
                if out in (SubmitOutcome.IMPROVED, SubmitOutcome.ADDED):
                    accepted += 1
        return accepted

    def _submit_record(
        self, n: int, g: Graph, rec: GraphRecord, cert: bytes
    ) -> SubmitOutcome:
        br = score(g)
        if br.score != rec.score:
            from .archive import ArchiveError

            raise ArchiveError(
                f"record at n={n} claims score {rec.score} but its payload "
                f"scores {br.score}"
            )
        if br.feasible and br.edges > upper_bound(n):
            raise BoundViolation(
                f"archived feasible graph with {br.edges} edges at n={n} "
                f"exceeds the bound {upper_bound(n)}"
            )
        with self._lock:
            slot = self._slots.get(n)
            if slot is None:
                self._slots[n] = _Slot(rec.score, {cert: (g, rec)}, version=1)
                return SubmitOutcome.IMPROVED
            if rec.score > slot.best_score:
                slot.best_score = rec.score
                slot.entries = {cert: (g, rec)}
                slot.version += 1
                return SubmitOutcome.IMPROVED
            if rec.score == slot.best_score and cert not in slot.entries:
                slot.entries[cert] = (g, rec)
                slot.version += 1
                return SubmitOutcome.ADDED
            if rec.score == slot.best_score:
                return SubmitOutcome.DUPLICATE
            return SubmitOutcome.REJECTED

    def sync_from_archive(
        self, directory: str | Path, sizes: Iterable[int] | None = None
    ) -> int:
        """Pull improvements flushed by other processes; no-op if absent."""
        if not Path(directory).exists():
            return 0
        return self.load_archive(directory, sizes)


def store_submit(
    store: BestGraphStore, n: int, candidate: Graph, provenance: Mapping | None = None
) -> SubmitOutcome:
    return store.submit(n, candidate, provenance)


def sample_seed(
    store: BestGraphStore, n: int, k_max: int, rng: np.random.Generator
) -> tuple[Graph, dict]:
    return store.sample_seed(n, k_max, rng)
