#!/usr/bin/env python3
"""Curriculum vs plain restarts with equal per-size flip budgets.

Reproduces the seeded-vs-empty comparison as plot-ready CSV: for each size,
the best score of an ascending curriculum sweep and of empty-start restarts
under the same number of tabu runs, merged over paired seeds.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from girthfive.campaign import paired_curriculum_experiment
from girthfive.scoring import normalized_score, reference_lookup
from girthfive.tabu import TabuConfig


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--range", default="30:50")
    ap.add_argument("--runs-per-size", type=int, default=12)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--iterations", type=int, default=1000)
    ap.add_argument("--out", default="curriculum_vs_restart.csv")
    args = ap.parse_args()
    lo, hi = (int(x) for x in args.range.split(":"))
    sizes = list(range(lo, hi + 1))

    res = paired_curriculum_experiment(
        sizes,
        runs_per_size=args.runs_per_size,
        tabu_cfg=TabuConfig(iterations=args.iterations),
        k_max=4,
        seeds=args.seeds,
    )
    rows = []
    for n in sizes:
        inc, emp = res[n]
        ref = reference_lookup(n).edges if n <= 200 else None
        rows.append(
            {
                "n": n,
                "curriculum": inc,
                "empty_start": emp,
                "curriculum_normalized": normalized_score(n, inc),
                "empty_start_normalized": normalized_score(n, emp),
                "reference": ref,
            }
        )
        print(f"n={n}: curriculum={inc}  empty={emp}  reference={ref}")
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
