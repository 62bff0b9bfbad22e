"""On-disk archive of discovered graphs.

Layout: one subdirectory per size (``n0050/``) holding a line-delimited
JSON record file, plus a single top-level ``manifest.json`` mapping each
size to its best score, record count and last-update timestamp. Record
files are replaced atomically (write-temp-then-rename), so readers never
observe a torn file and a crashed writer never loses a previously flushed
improvement. Different sizes never share files, so per-size writers do not
contend.
"""

from __future__ import annotations

import base64
import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping

from .canon import canonical_certificate
from .graphs import Graph
from .scoring import score
from .sparse6 import Sparse6Error, decode_sparse6, encode_sparse6

MANIFEST_NAME = "manifest.json"
RECORDS_NAME = "records.jsonl"
FORMAT_TAG = "girthfive-archive/1"


class ArchiveError(RuntimeError):
    """Raised when an archive is missing, unreadable, or corrupt."""


@dataclass(frozen=True, slots=True)
class GraphRecord:
    """One archived graph plus enough context to reproduce it."""

    n: int
    edges: int
    score: int
    sparse6: str
    certificate: str  # base64 of the canonical form
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "edges": self.edges,
                "score": self.score,
                "sparse6": self.sparse6,
                "certificate": self.certificate,
                "provenance": self.provenance,
            },
            sort_keys=True,
        )

    def graph(self) -> Graph:
        return decode_sparse6(self.sparse6)


def record_from_graph(
    g: Graph, provenance: Mapping | None = None, certificate: bytes | None = None
) -> GraphRecord:
    br = score(g)
    cert = certificate if certificate is not None else canonical_certificate(g)
    return GraphRecord(
        n=g.n,
        edges=g.edge_count,
        score=br.score,
        sparse6=encode_sparse6(g).decode("ascii"),
        certificate=base64.b64encode(cert).decode("ascii"),
        provenance=dict(provenance or {}),
    )


def _record_from_json(line: str, path: Path) -> GraphRecord:
    try:
        obj = json.loads(line)
        rec = GraphRecord(
            n=int(obj["n"]),
            edges=int(obj["edges"]),
            score=int(obj["score"]),
            sparse6=str(obj["sparse6"]),
            certificate=str(obj["certificate"]),
            provenance=dict(obj.get("provenance", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ArchiveError(f"{path}: unreadable record: {exc}") from exc
    try:
        g = rec.graph()
    except Sparse6Error as exc:
        raise ArchiveError(f"{path}: record payload not sparse6: {exc}") from exc
    if g.n != rec.n or g.edge_count != rec.edges:
        raise ArchiveError(
            f"{path}: record claims n={rec.n}, edges={rec.edges} but payload "
            f"decodes to n={g.n}, edges={g.edge_count}"
        )
    return rec


def _atomic_write(path: Path, data: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _size_dir(root: Path, n: int) -> Path:
    return root / f"n{n:04d}"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def read_manifest(directory: str | Path) -> dict:
    path = Path(directory) / MANIFEST_NAME
    if not path.exists():
        return {"format": FORMAT_TAG, "sizes": {}}
    try:
        manifest = json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        raise ArchiveError(f"{path}: unreadable manifest: {exc}") from exc
    if not isinstance(manifest.get("sizes"), dict):
        raise ArchiveError(f"{path}: manifest has no sizes map")
    return manifest


def archive_write(
    slices: Mapping[int, Iterable[GraphRecord]], directory: str | Path
) -> dict:
    """Replace the stored record set of each given size; returns the manifest.

    Sizes not present in `slices` are left untouched.
    """
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    manifest = read_manifest(root)
    sizes = manifest["sizes"]
    for n, records in sorted(slices.items()):
        records = list(records)
        for rec in records:
            if rec.n != n:
                raise ArchiveError(f"record of size {rec.n} in slice for size {n}")
        d = _size_dir(root, n)
        d.mkdir(parents=True, exist_ok=True)
        _atomic_write(d / RECORDS_NAME, "".join(r.to_json() + "\n" for r in records))
        sizes[str(n)] = {
            "size": n,
            "best_score": max((r.score for r in records), default=None),
            "count": len(records),
            "updated_at": _now(),
        }
    manifest["format"] = FORMAT_TAG
    _atomic_write(root / MANIFEST_NAME, json.dumps(manifest, indent=2, sort_keys=True))
    return manifest


def archive_read(
    directory: str | Path, sizes: Iterable[int] | None = None
) -> dict[int, list[GraphRecord]]:
    """Load per-size record lists; every record is decode-verified."""
    root = Path(directory)
    if not root.exists():
        raise ArchiveError(f"no archive at {root}")
    manifest = read_manifest(root)
    listed = {int(k) for k in manifest["sizes"]}
    # also pick up size directories a concurrent writer may have flushed
    # between manifest updates
    on_disk = set()
    for d in root.glob("n[0-9][0-9][0-9][0-9]"):
        if (d / RECORDS_NAME).exists():
            on_disk.add(int(d.name[1:]))
    wanted = set(int(s) for s in sizes) if sizes is not None else None
    out: dict[int, list[GraphRecord]] = {}
    for n in sorted(listed | on_disk):
        if wanted is not None and n not in wanted:
            continue
        path = _size_dir(root, n) / RECORDS_NAME
        if not path.exists():
            raise ArchiveError(f"manifest lists size {n} but {path} is missing")
        records = []
        for line in path.read_text().splitlines():
            if not line.strip():
                continue
            rec = _record_from_json(line, path)
            if rec.n != n:
                raise ArchiveError(f"{path}: size-{rec.n} record in size-{n} file")
            records.append(rec)
        out[n] = records
    return out
