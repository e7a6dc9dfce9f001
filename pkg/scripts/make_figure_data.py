#!/usr/bin/env python3
"""Regenerate the CSV behind every figure preset.

Usage: python scripts/make_figure_data.py [--out results] [--jobs N] [--only fig1,fig9]
"""

import argparse
import time
from pathlib import Path

from commitcoord.scenarios import PRESETS, emit_csv, run_scenario


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--only", default=None,
                        help="comma-separated subset of figure ids")
    args = parser.parse_args()
    wanted = args.only.split(",") if args.only else list(PRESETS)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for fig_id in wanted:
        config = PRESETS[fig_id]
        started = time.perf_counter()
        target = out_dir / f"{fig_id}.csv"
        emit_csv(config, run_scenario(config, jobs=args.jobs), target)
        rows = sum(1 for _ in open(target)) - 1
        print(f"{fig_id}: {rows} rows in {time.perf_counter() - started:.1f}s -> {target}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
