#!/usr/bin/env python3
"""Score-equitability experiment: score every measure on every relation at one
matched noise level, then print the per-measure dispersion table.

Writes the same CSVs as `equibench equitability` when --out is given; without
it, prints the summary only. Runtimes scale with score_reps * n; the shipped
desk config finishes on a laptop.
"""
import argparse
import sys
import time

from equibench import equitability_spread, load_config, run_equitability
from equibench.cli import main as cli_main


def run(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", required=True, help="INI experiment config")
    ap.add_argument("--out", help="output directory (optional, CSVs + manifest)")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    if args.out:
        # delegate to the CLI so the manifest/run_id plumbing stays in one place
        rc = cli_main(
            ["equitability", "--config", args.config, "--out", args.out,
             "--threads", str(args.threads)]
        )
        if rc != 0:
            return rc

    cfg = load_config(args.config)
    t0 = time.time()
    table = run_equitability(cfg, threads=args.threads)
    report = equitability_spread(table)
    dt = time.time() - t0

    print(f"# {len(table.cells)} cells, {len(table.failures)} failures, {dt:.1f}s")
    print(f"{'measure':8} {'spread_sd':>10} {'range':>10} {'subset_sd':>10}")
    for m in cfg.measures:
        print(
            f"{m:8} {report.spread_sd[m]:10.4f} {report.spread_range[m]:10.4f} "
            f"{report.subset_sd[m]:10.4f}"
        )
    if table.failures:
        print("failed cells:", file=sys.stderr)
        for fl in table.failures[:20]:
            print(f"  {fl.measure}/{fl.relation}/{fl.key}: {fl.message}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
