#!/usr/bin/env python3
"""Build the bundled starter archive.

Runs one ascending curriculum sweep over small sizes (each size seeded from
the best graphs found below it) and stores the per-size best graphs, then
adds the published 64-node, 230-edge graph. The result is the default seed
archive for long campaigns; rebuild with a bigger budget to improve it.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from girthfive.campaign import ascending_sweep
from girthfive.fixtures import published_graph
from girthfive.scoring import reference_lookup
from girthfive.store import BestGraphStore
from girthfive.tabu import TabuConfig


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "seed-archive"))
    ap.add_argument("--max-size", type=int, default=53)
    ap.add_argument("--runs-per-size", type=int, default=24)
    ap.add_argument("--iterations", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    store = BestGraphStore()
    sizes = list(range(1, args.max_size + 1))
    cfg = TabuConfig(iterations=args.iterations)
    t0 = time.time()
    best = ascending_sweep(store, sizes, args.runs_per_size, cfg, k_max=4, seed=args.seed)
    pub = published_graph()
    store.submit(pub.n, pub, {"method": "published", "source": "released-archive"})
    store.flush(args.out)
    print(f"sweep took {time.time() - t0:.0f}s; archive at {args.out}")
    for n in sizes:
        ref = reference_lookup(n).edges
        mark = "" if best[n] == ref else f"  (best known {ref})"
        print(f"  n={n}: {best[n]}{mark}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
