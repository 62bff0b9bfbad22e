"""Command-line surface: search, campaign, verify, convert, oracle, report, bench.

Exit codes: 0 success/feasible, 1 infeasible or verification gap, 2 usage
error, 3 I/O or data error. Every run prints its resolved configuration and
seed so results can be reproduced.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from .archive import ArchiveError, archive_read, read_manifest
from .campaign import CampaignConfig, build_report, campaign_run
from .graphs import graph_from_edges, new_graph, random_graph
from .oracle import ORACLE_MAX_NODES, exhaustive_extremal
from .scoring import (
    CONJECTURED_DENSITY_LIMIT,
    normalized_score,
    reference_lookup,
    score,
    upper_bound,
    write_reference_csv,
)
from .sparse6 import Sparse6Error, decode_sparse6, encode_sparse6
from .store import BestGraphStore
from .tabu import TabuConfig, restart_loop, tabu_search

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _parse_budget(text: str) -> float:
    units = {"s": 1.0, "m": 60.0, "h": 3600.0, "d": 86400.0}
    if text and text[-1].lower() in units:
        return float(text[:-1]) * units[text[-1].lower()]
    return float(text)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"range must look like a:b, got {text!r}") from exc


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _load_graph(data: bytes):
    """sparse6 if it looks like sparse6, otherwise a 'u v' edge list."""
    stripped = data.strip()
    if stripped.startswith(b">>sparse6<<") or stripped.startswith(b":"):
        return decode_sparse6(data)
    edges = []
    top = -1
    n_decl = None
    for line in stripped.decode("utf-8", errors="replace").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1 and n_decl is None and not edges:
            n_decl = int(parts[0])
            continue
        if len(parts) != 2:
            raise ValueError(f"bad edge-list line: {line!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        top = max(top, u, v)
    n = n_decl if n_decl is not None else top + 1
    if n < 1:
        raise ValueError("empty edge list with no node count")
    return graph_from_edges(n, edges)


def cmd_verify(args) -> int:
    try:
        g = decode_sparse6(_read_input(args.input))
    except (OSError, Sparse6Error) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_IO
    br = score(g)
    try:
        ref = reference_lookup(g.n).edges
    except ValueError:
        ref = None
    bound = upper_bound(g.n)
    feasible = br.feasible
    print(
        f"n={g.n} edges={br.edges} triangles={br.triangles} squares={br.squares} "
        f"score={br.score} feasible={'yes' if feasible else 'no'} "
        f"reference={ref if ref is not None else 'n/a'} bound={bound}"
    )
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def cmd_convert(args) -> int:
    try:
        g = _load_graph(_read_input(args.input))
    except (OSError, Sparse6Error, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_IO
    if args.to == "sparse6":
        out = encode_sparse6(g).decode("ascii") + "\n"
    elif args.to == "edges":
        out = f"{g.n}\n" + "".join(f"{u} {v}\n" for u, v in g.edges())
    else:
        br = score(g)
        out = (
            json.dumps(
                {
                    "n": g.n,
                    "edges": list(g.edges()),
                    "edge_count": g.edge_count,
                    "score": br.score,
                    "feasible": br.feasible,
                },
                sort_keys=True,
            )
            + "\n"
        )
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if not 1 <= args.n <= ORACLE_MAX_NODES:
        print(f"oracle supports n in 1..{ORACLE_MAX_NODES}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.time()
    result = exhaustive_extremal(args.n)
    elapsed = time.time() - t0
    print(
        f"n={args.n} f={result.best_score} witnesses={result.witness_count} "
        f"({elapsed:.1f}s exhaustive over 2^{args.n * (args.n - 1) // 2} graphs)"
    )
    lines = [encode_sparse6(g).decode("ascii") for g in result.witnesses]
    for s in lines:
        print(s)
    if args.out:
        Path(args.out).write_text("".join(s + "\n" for s in lines))
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = TabuConfig(history_size=args.history, iterations=args.iterations)
    out = restart_loop(args.n, cfg, args.restarts, np.random.default_rng(args.seed))
    br = score(out.best_graph)
    resolved = {
        "command": "search",
        "n": args.n,
        "restarts": args.restarts,
        "iterations": args.iterations,
        "history": args.history,
        "seed": args.seed,
        "best_score": out.best_score,
        "feasible": br.feasible,
        "sparse6": encode_sparse6(out.best_graph).decode("ascii"),
    }
    print(json.dumps(resolved, sort_keys=True))
    if args.archive:
        store = BestGraphStore()
        store.submit(
            args.n,
            out.best_graph,
            {
                "method": "tabu-restarts",
                "restarts": args.restarts,
                "iterations": args.iterations,
                "history_size": args.history,
                "rng_seed": args.seed,
            },
        )
        store.flush(args.archive)
    return EXIT_OK


def cmd_campaign(args) -> int:
    lo, hi = args.range
    seed_archive = args.seed_archive
    archive_dir = args.archive
    if args.resume:
        seed_archive = seed_archive or args.resume
        archive_dir = archive_dir or args.resume
    try:
        cfg = CampaignConfig(
            size_lo=lo,
            size_hi=hi,
            k_max=args.k_max,
            tabu=TabuConfig(history_size=args.history, iterations=args.iterations),
            workers_per_size=args.workers,
            budget_seconds=_parse_budget(args.budget) if args.budget else None,
            runs_per_worker=args.runs_per_worker,
            seed_archive=seed_archive,
            archive_dir=archive_dir,
            seed=args.seed,
        )
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    try:
        _, report = campaign_run(cfg)
    except ArchiveError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    print(report.to_text())
    if args.report:
        Path(args.report).write_text(report.to_json())
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        slices = archive_read(args.archive)
    except ArchiveError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    rows = []
    for n in sorted(slices):
        records = slices[n]
        best = max((r.score for r in records), default=None)
        if best is None:
            continue
        try:
            ref = reference_lookup(n).edges
        except ValueError:
            ref = None
        rows.append(
            {
                "n": n,
                "score": best,
                "normalized": normalized_score(n, best),
                "reference": ref,
                "gap": (ref - best) if ref is not None else None,
                "graphs": len(records),
                "density_limit": CONJECTURED_DENSITY_LIMIT,
            }
        )
    header = f"{'n':>5} {'score':>7} {'e/(n*sqrt(n))':>14} {'reference':>10} {'gap':>5} {'graphs':>7} {'limit':>8}"
    print(header)
    for r in rows:
        print(
            f"{r['n']:>5} {r['score']:>7} {r['normalized']:>14.4f} "
            f"{r['reference'] if r['reference'] is not None else '-':>10} "
            f"{r['gap'] if r['gap'] is not None else '-':>5} {r['graphs']:>7} "
            f"{r['density_limit']:>8.5f}"
        )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(
                fh,
                fieldnames=[
                    "n", "score", "normalized", "reference", "gap", "graphs", "density_limit",
                ],
            )
            w.writeheader()
            w.writerows(rows)
    if args.reference_csv:
        write_reference_csv(args.reference_csv)
    return EXIT_OK


def cmd_bench(args) -> int:
    rng = np.random.default_rng(args.seed)
    for n in args.sizes:
        g = random_graph(n, min(0.5, 3.0 / max(n - 1, 1)), rng)
        cfg = TabuConfig(history_size=min(5, max(0, n * (n - 1) // 2 - 1)), iterations=args.iterations)
        t0 = time.time()
        tabu_search(g if g.n == n else new_graph(n), cfg, rng)
        dt = time.time() - t0
        per = dt / args.iterations
        print(
            f"n={n}: {args.iterations} tabu iterations in {dt:.2f}s "
            f"({per * 1e6:.0f} us/iteration, {n * (n - 1) // 2} flips scored each)"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="girthfive",
        description="Search for n-node graphs with no 3- or 4-cycles and many edges.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="tabu search with restarts at one size")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--restarts", type=int, default=32)
    s.add_argument("--iterations", type=int, default=1000)
    s.add_argument("--history", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--archive", type=str, default=None)
    s.set_defaults(fn=cmd_search)

    c = sub.add_parser("campaign", help="incremental curriculum campaign over a size range")
    c.add_argument("--range", type=_parse_range, required=True, metavar="A:B")
    c.add_argument("--budget", type=str, default=None, help="wall clock, e.g. 30s, 10m, 12h")
    c.add_argument("--runs-per-worker", type=int, default=None)
    c.add_argument("--workers", type=int, default=32, help="workers per size")
    c.add_argument("--k-max", type=int, default=4)
    c.add_argument("--iterations", type=int, default=1000)
    c.add_argument("--history", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--archive", type=str, default=None, help="checkpoint directory")
    c.add_argument("--seed-archive", type=str, default=None, help="initial store contents")
    c.add_argument("--resume", type=str, default=None, help="checkpoint dir to continue")
    c.add_argument("--report", type=str, default=None, help="write JSON report here")
    c.set_defaults(fn=cmd_campaign)

    v = sub.add_parser("verify", help="check a sparse6 graph and compare to the tables")
    v.add_argument("input", help="path or - for stdin")
    v.set_defaults(fn=cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive exact optimum for small n")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--out", type=str, default=None)
    o.set_defaults(fn=cmd_oracle)

    t = sub.add_parser("convert", help="convert between sparse6, edge list, json")
    t.add_argument("input", help="path or - for stdin")
    t.add_argument("--to", choices=["sparse6", "edges", "json"], default="json")
    t.add_argument("--out", type=str, default=None)
    t.set_defaults(fn=cmd_convert)

    r = sub.add_parser("report", help="tabulate an archive against the best-known values")
    r.add_argument("--archive", type=str, required=True)
    r.add_argument("--csv", type=str, default=None)
    r.add_argument("--reference-csv", type=str, default=None, help="dump the built-in table")
    r.set_defaults(fn=cmd_report)

    b = sub.add_parser("bench", help="tabu iteration throughput")
    b.add_argument("--sizes", type=int, nargs="+", default=[20, 50, 100])
    b.add_argument("--iterations", type=int, default=200)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(fn=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
