#!/usr/bin/env python3
"""Trace the two-stage SSNR construction on one relation.

Stage 1 rescales fresh noise draws toward the target power ratio and keeps the
best; stage 2 replaces the final noise component with the root of a quadratic
so the achieved ratio is exact. Useful for eyeballing how often stage 1 lands
inside tolerance on its own and how far the exact correction has to move.
"""
import argparse

import numpy as np

from equibench import (
    NoRealRootError,
    derive_seed,
    eval_relation,
    exact_ssnr_adjust,
    sample_x,
    ssnr,
)
from equibench.noise import heuristic_ssnr_noise


def run(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--relation", default="line")
    ap.add_argument("--target", type=float, default=10.471)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--tolerance", type=float, default=0.03)
    args = ap.parse_args(argv)

    x = sample_x(args.n, seed=derive_seed(0, "trace-x", args.relation))
    sig = eval_relation(args.relation, x)
    hits = 0
    worst_move = 0.0
    for s in range(args.seeds):
        trace: list = []
        eps, achieved = heuristic_ssnr_noise(
            sig, args.target, seed=derive_seed(0, "trace", s),
            tolerance=args.tolerance, trace_out=trace,
        )
        ok = abs(achieved - args.target) <= args.tolerance
        hits += ok
        try:
            exact = exact_ssnr_adjust(sig, eps, args.target)
        except NoRealRootError:
            print(f"seed {s:3d}: heuristic {achieved:9.4f}  exact step: no real root")
            continue
        move = abs(exact[-1] - eps[-1])
        worst_move = max(worst_move, move)
        final = ssnr(sig + exact, exact)
        print(
            f"seed {s:3d}: heuristic {achieved:9.4f} after {len(trace):3d} draws "
            f"({'in' if ok else 'out of'} tol)"
            f"  last-component move {move:8.5f}  final {final:.12f}"
        )
    print(f"\n{hits}/{args.seeds} heuristic runs within {args.tolerance}")
    print(f"largest exact-step move of the final component: {worst_move:.5f}")
    print(f"noise scale for comparison: {float(np.std(sig)):.3f} (signal sd)")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
