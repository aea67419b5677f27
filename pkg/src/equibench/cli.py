"""Command-line front end.

Subcommands: relations, gen, score, equitability, power, print-default-config.
Exit codes are a stable contract: 0 ok, 2 unknown id, 3 I/O failure, 4 parse
or validation failure, 5 completed with some failed cells (results written).
All CSV output uses '.' decimals, UTF-8, and newline-terminated rows; scores,
spread, and power files open with a `# run_id=...` line tying them to the
manifest.json written next to them.
"""
from __future__ import annotations

import argparse
import csv
import datetime
import hashlib
import json
import os
import sys

from . import __version__
from .config import default_config_text, load_config
from .measures import get_measure, list_measures, score
from .noise import NoiseTarget, make_noisy_dataset
from .relations import get_relation, list_relations
from .suite import (
    ExperimentConfig,
    equitability_spread,
    run_equitability,
    run_power_equitability,
)

EXIT_OK = 0
EXIT_BAD_ID = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_PARTIAL = 5


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _config_dict(cfg: ExperimentConfig) -> dict:
    return {
        "relations": list(cfg.relations),
        "measures": list(cfg.measures),
        "noise": [
            {
                "kind": t.kind,
                "ratio": t.ratio,
                "tolerance": t.tolerance,
                "max_steps": t.max_steps,
            }
            for t in cfg.noise
        ],
        "n": cfg.n,
        "score_reps": cfg.score_reps,
        "power_reps": cfg.power_reps,
        "alpha": cfg.alpha,
        "base_seed": cfg.base_seed,
        "permutations": cfg.permutations,
        "n_overrides": dict(cfg.n_overrides),
        "measure_params": {k: dict(v) for k, v in sorted(cfg.measure_params.items())},
    }


def run_id_for(cfg: ExperimentConfig) -> str:
    blob = json.dumps(_config_dict(cfg), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def _write_rows(path: str, header: list[str], rows, run_id: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if run_id is not None:
            fh.write(f"# run_id={run_id}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_manifest(out_dir, command, cfg, run_id, started, failures, outputs) -> None:
    manifest = {
        "run_id": run_id,
        "artifact_version": __version__,
        "command": command,
        "config": _config_dict(cfg),
        "base_seed": cfg.base_seed,
        "started_utc": started,
        "finished_utc": _now(),
        "failures": failures,
        "outputs": outputs,
    }
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def _thread_count(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("EQUIBENCH_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def cmd_relations(args) -> int:
    rels = list_relations()
    if args.json:
        payload = [
            {"id": r.id, "name": r.display_name, "formula": r.formula} for r in rels
        ]
        print(json.dumps(payload, indent=2))
    else:
        for r in rels:
            print(f"{r.id:26} {r.formula}")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        relation = get_relation(args.relation)
    except ValueError as err:
        return _fail(EXIT_BAD_ID, str(err))
    kind, ratio = ("msnr", args.msnr) if args.msnr is not None else ("ssnr", args.ssnr)
    try:
        target = NoiseTarget(kind, ratio)
        if kind == "msnr" and ratio <= 1.0:
            raise ValueError(f"msnr ratio must be > 1, got {ratio}")
        ds = make_noisy_dataset(relation, args.n, target, args.seed)
    except ValueError as err:
        return _fail(EXIT_PARSE, str(err))

    rows = [
        [repr(float(xv)), repr(float(yv)), relation.id, kind, repr(ratio),
         repr(ds.achieved_ratio), args.seed]
        for xv, yv in zip(ds.x, ds.y)
    ]
    header = ["x", "y", "relation", "noise_kind", "target_ratio", "achieved_ratio", "seed"]
    if args.out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return EXIT_OK
    try:
        _write_rows(args.out, header, rows)
    except OSError as err:
        return _fail(EXIT_IO, f"cannot write {args.out}: {err}")
    return EXIT_OK


def _read_xy_csv(path: str):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(row for row in fh if not row.startswith("#"))
        if reader.fieldnames is None or not {"x", "y"} <= set(reader.fieldnames):
            raise ValueError(f"{path}: need columns x and y, got {reader.fieldnames}")
        xs, ys = [], []
        for i, row in enumerate(reader, start=2):
            try:
                xs.append(float(row["x"]))
                ys.append(float(row["y"]))
            except (TypeError, ValueError) as err:
                raise ValueError(f"{path}: line {i}: {err}") from err
    return xs, ys


def cmd_score(args) -> int:
    wanted = [tok.strip() for tok in args.measures.split(",") if tok.strip()]
    known = set(list_measures(include_placeholders=True))
    for m in wanted:
        if m not in known:
            return _fail(EXIT_BAD_ID, f"unknown measure {m!r}")
    params = {}
    if args.params:
        try:
            params = json.loads(args.params)
        except json.JSONDecodeError as err:
            return _fail(EXIT_PARSE, f"--params is not valid JSON: {err}")
    try:
        xs, ys = _read_xy_csv(args.input)
    except OSError as err:
        return _fail(EXIT_IO, f"cannot read {args.input}: {err}")
    except ValueError as err:
        return _fail(EXIT_PARSE, str(err))

    rows = []
    for m in wanted:
        try:
            res = score(m, xs, ys, params.get(m), seed=args.seed)
        except NotImplementedError as err:
            return _fail(EXIT_BAD_ID, str(err))
        except ValueError as err:
            return _fail(EXIT_PARSE, f"{m}: {err}")
        rows.append([m, repr(res.value), res.n, json.dumps(res.params, sort_keys=True)])

    header = ["measure", "value", "n", "params"]
    if args.out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return EXIT_OK
    try:
        _write_rows(args.out, header, rows)
    except OSError as err:
        return _fail(EXIT_IO, f"cannot write {args.out}: {err}")
    return EXIT_OK


def _load_config_or_fail(path: str):
    try:
        return load_config(path), None
    except OSError as err:
        return None, _fail(EXIT_IO, f"cannot read {path}: {err}")
    except ValueError as err:
        return None, _fail(EXIT_PARSE, str(err))


def _prepare_out_dir(out_dir: str) -> str | None:
    try:
        os.makedirs(out_dir, exist_ok=True)
        probe = os.path.join(out_dir, ".write-probe")
        with open(probe, "w") as fh:
            fh.write("")
        os.remove(probe)
    except OSError as err:
        return f"cannot write to {out_dir}: {err}"
    return None


def cmd_equitability(args) -> int:
    cfg, err = _load_config_or_fail(args.config)
    if cfg is None:
        return err
    problem = _prepare_out_dir(args.out)
    if problem:
        return _fail(EXIT_IO, problem)
    started = _now()
    run_id = run_id_for(cfg)

    table = run_equitability(cfg, threads=_thread_count(args))
    report = equitability_spread(table)

    scores_rows = [
        [c.measure, c.relation, c.rep, repr(c.score), repr(c.achieved_ratio)]
        for c in table.cells
    ]
    spread_rows = [
        [m, repr(report.spread_sd[m]), repr(report.spread_range[m]), repr(report.subset_sd[m])]
        for m in cfg.measures
        if m in report.spread_sd
    ]
    failures = [
        {"measure": f.measure, "relation": f.relation, "rep": f.key, "message": f.message}
        for f in table.failures
    ]
    try:
        _write_rows(
            os.path.join(args.out, "scores.csv"),
            ["measure", "relation", "rep", "score", "achieved_ratio"],
            scores_rows,
            run_id,
        )
        _write_rows(
            os.path.join(args.out, "spread.csv"),
            ["measure", "spread_sd", "spread_range", "subset_sd"],
            spread_rows,
            run_id,
        )
        _write_manifest(
            args.out, "equitability", cfg, run_id, started, failures,
            ["scores.csv", "spread.csv"],
        )
    except OSError as err:
        return _fail(EXIT_IO, f"cannot write results: {err}")
    if failures:
        print(f"warning: {len(failures)} cells failed; see manifest.json", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_power(args) -> int:
    cfg, err = _load_config_or_fail(args.config)
    if cfg is None:
        return err
    problem = _prepare_out_dir(args.out)
    if problem:
        return _fail(EXIT_IO, problem)
    started = _now()
    run_id = run_id_for(cfg)

    table = run_power_equitability(cfg, threads=_thread_count(args))
    power_rows = [
        [
            est.measure,
            est.relation.id,
            repr(est.noise.ratio),
            repr(est.power),
            repr(est.ci_low),
            repr(est.ci_high),
            est.reps_completed,
        ]
        for est in table.cells
    ]
    failures = [
        {
            "measure": f.measure,
            "relation": f.relation,
            "noise_level": getattr(f.key, "ratio", f.key),
            "message": f.message,
        }
        for f in table.failures
    ]
    try:
        _write_rows(
            os.path.join(args.out, "power.csv"),
            ["measure", "relation", "noise_level", "power", "ci_low", "ci_high", "reps_completed"],
            power_rows,
            run_id,
        )
        _write_manifest(
            args.out, "power", cfg, run_id, started, failures, ["power.csv"]
        )
    except OSError as err:
        return _fail(EXIT_IO, f"cannot write results: {err}")
    if failures:
        print(f"warning: {len(failures)} cells failed; see manifest.json", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_print_default_config(args) -> int:
    sys.stdout.write(default_config_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equibench",
        description="Noise-controlled dependence-measure benchmarking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relations", help="list the relation catalog")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_relations)

    p = sub.add_parser("gen", help="generate one noisy dataset as CSV")
    p.add_argument("--relation", required=True)
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--msnr", type=float, help="target variance ratio (> 1)")
    group.add_argument("--ssnr", type=float, help="target power ratio (> 0)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("score", help="score a dataset CSV with chosen measures")
    p.add_argument("--input", required=True, help="CSV with x and y columns")
    p.add_argument("--measures", required=True, help="comma-separated measure ids")
    p.add_argument("--params", help='JSON object, e.g. {"mi": {"k": 8}}')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(fn=cmd_score)

    p = sub.add_parser("equitability", help="run the scoring experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--threads", type=int, help="workers (or EQUIBENCH_THREADS)")
    p.set_defaults(fn=cmd_equitability)

    p = sub.add_parser("power", help="run the power experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--threads", type=int, help="workers (or EQUIBENCH_THREADS)")
    p.set_defaults(fn=cmd_power)

    p = sub.add_parser("print-default-config", help="emit a commented config template")
    p.set_defaults(fn=cmd_print_default_config)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
