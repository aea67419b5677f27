#!/usr/bin/env python3
"""Power-equitability experiment: permutation-test power for every
(measure, relation, noise level) cell, printed as one matrix per noise level.

Power spread across relations (sd of the power column) is the headline
number: a flat column means the measure detects every functional form about
equally well at that noise level.
"""
import argparse
import time

import numpy as np

from equibench import load_config, run_power_equitability


def run(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", required=True, help="INI experiment config")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    cfg = load_config(args.config)
    t0 = time.time()
    table = run_power_equitability(cfg, threads=args.threads)
    dt = time.time() - t0
    print(f"# {len(table.cells)} cells, {len(table.failures)} failures, {dt:.1f}s")

    for target in cfg.noise:
        print(f"\n== {target.kind} = {target.ratio} ==")
        print(f"{'relation':26}" + "".join(f"{m:>7}" for m in cfg.measures))
        cells = {
            (c.measure, c.relation.id): c.power
            for c in table.cells
            if c.noise == target
        }
        for rid in cfg.relations:
            row = "".join(
                f"{cells[(m, rid)]:7.2f}" if (m, rid) in cells else f"{'-':>7}"
                for m in cfg.measures
            )
            print(f"{rid:26}{row}")
        sds = [
            float(np.std([v for (m, r), v in cells.items() if m == mm], ddof=1))
            if len([1 for (m, r) in cells if m == mm]) > 1
            else 0.0
            for mm in cfg.measures
        ]
        print(f"{'power sd over relations':26}" + "".join(f"{s:7.3f}" for s in sds))
    for fl in table.failures[:20]:
        print(f"failed: {fl.measure}/{fl.relation}/{fl.key}: {fl.message}")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
