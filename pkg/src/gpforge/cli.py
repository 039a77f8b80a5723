"""Command-line front end: ``gpforge mine|synth|score|bench``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from gpforge.evaluation import (
    PRESETS,
    Grid,
    aggregate,
    aggregate_csv,
    grid_config,
    run_experiment,
    runs_csv,
    score,
    worker_count,
)
from gpforge.graph import GraphError
from gpforge.io import parse_vertex_sets, read_graph, read_vertex_sets
from gpforge.negatives import dump_negatives
from gpforge.patterns import CorePattern, GenRuleKind, InstanceConfig, generate_instance
from gpforge.pipeline import run_pipeline

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _fraction(text: str) -> float:
    x = float(text)
    if not 0.0 < x <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in (0, 1], got {text}")
    return x


def _at_least(lo: int):
    def conv(text: str) -> int:
        x = int(text)
        if x < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}, got {text}")
        return x
    return conv


def _seed(text: str) -> int:
    x = int(text, 0)
    if not 0 <= x < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return x


def _csv_list(conv):
    def parse(text: str):
        try:
            return [conv(t) for t in text.split(",") if t.strip()]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    return parse


def _write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gpforge", description="Mine generalized patterns from example subgraphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    m = sub.add_parser("mine", help="mine GPs of a graph from user example vertex sets")
    m.add_argument("graph", type=Path, help="graph text file")
    m.add_argument("examples", type=Path, nargs="+", help="JSON files with arrays of vertex ids")
    m.add_argument("-k", type=_at_least(2), default=4, help="max vertices per negative example")
    m.add_argument("--sample-frac", type=_fraction, default=1.0)
    m.add_argument("--seed", type=_seed, default=0, help="seed for sampled negative extraction")
    m.add_argument("-o", "--output", type=Path, default=Path("gps.json"))
    m.add_argument("--dump-lattice", type=Path, metavar="PATH")
    m.add_argument("--dump-negatives", type=Path, metavar="PATH")

    s = sub.add_parser("synth", help="generate a planted-GP benchmark instance")
    s.add_argument("--pattern", choices=[c.value for c in CorePattern], default="bp1")
    s.add_argument("--rule", choices=[r.value for r in GenRuleKind])
    s.add_argument("--num-gps", type=_at_least(1), default=20)
    s.add_argument("--links", type=_at_least(0), default=50)
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--min-size", type=_at_least(1))
    s.add_argument("--max-size", type=_at_least(1))
    s.add_argument("-o", "--output", type=Path, required=True, help="bundle directory")

    c = sub.add_parser("score", help="score mined GPs against ground truth")
    c.add_argument("found", type=Path, help="output of `mine` or a JSON array of vertex-id arrays")
    c.add_argument("truth", type=Path, help="truth.json of a bundle")

    b = sub.add_parser("bench", help="run a seeded experiment grid")
    b.add_argument("--figure", choices=sorted(PRESETS), help="preset grid")
    b.add_argument("--patterns", type=_csv_list(str))
    b.add_argument("--rules", type=_csv_list(str))
    b.add_argument("--links", type=_csv_list(int))
    b.add_argument("--examples", type=_csv_list(int))
    b.add_argument("--k", dest="ks", type=_csv_list(int))
    b.add_argument("--frac", dest="fracs", type=_csv_list(float))
    b.add_argument("--num-gps", type=_at_least(1))
    b.add_argument("--runs", type=_at_least(1))
    b.add_argument("--seed", type=_seed, default=0)
    b.add_argument("--timing", action="store_true", help="fill the wall_ms column")
    b.add_argument("-o", "--output", type=Path, default=Path("bench_out"), help="output directory")
    return p


def _load_examples(paths: Sequence[Path]) -> List[List[int]]:
    sets = []
    for path in paths:
        sets.extend(read_vertex_sets(path))
    if not sets:
        raise GraphError("no positive examples given")
    return sets


def cmd_mine(args) -> int:
    host = read_graph(args.graph)
    examples = _load_examples(args.examples)
    rng = np.random.default_rng(args.seed)
    result = run_pipeline(host, examples, args.k, args.sample_frac, rng)
    config = {
        "command": "mine",
        "graph": str(args.graph),
        "examples": [str(p) for p in args.examples],
        "k": args.k,
        "sample_frac": args.sample_frac,
        "seed": args.seed,
    }
    _write_json(args.output, {"config": config, "results": [gp.to_record() for gp in result.gps]})
    if args.dump_lattice:
        _write_json(args.dump_lattice, {"config": config, "lattice": result.induction.lattice.to_records()})
    if args.dump_negatives:
        args.dump_negatives.parent.mkdir(parents=True, exist_ok=True)
        header = "# config: " + json.dumps(config, sort_keys=True) + "\n"
        args.dump_negatives.write_text(header + dump_negatives(result.negatives), encoding="utf-8")
    print(f"seed: {args.seed}")
    print(f"negative examples: {len(result.negatives)}")
    print(f"hypotheses: {len(result.induction.hypotheses)}")
    print(f"cores: {len(result.cores)}")
    print(f"gps: {len(result.gps)}")
    return EXIT_OK


def cmd_synth(args) -> int:
    cfg = InstanceConfig(
        args.pattern, args.rule, args.num_gps, args.links, args.seed, args.min_size, args.max_size
    )
    inst = generate_instance(cfg)
    inst.save(args.output)
    print(f"seed: {inst.config.seed}")
    print(f"vertices: {inst.graph.n}")
    print(f"edges: {inst.graph.m}")
    print(f"gps: {len(inst.truth)}")
    return EXIT_OK


def _read_found(path: Path) -> List[List[int]]:
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(data, dict) and "results" in data:
        data = data["results"]
    if isinstance(data, list) and all(isinstance(r, dict) for r in data):
        try:
            data = [r["vertex_set"] for r in data]
        except KeyError as exc:
            raise GraphError(f"{path}: result record without vertex_set") from exc
    return parse_vertex_sets(json.dumps(data), str(path))


def cmd_score(args) -> int:
    found = _read_found(args.found)
    truth = read_vertex_sets(args.truth)
    sc = score(found, truth)
    print(json.dumps({"precision": sc.precision, "recall": sc.recall, "soundness": sc.soundness}, sort_keys=True))
    return EXIT_OK


def _grid_from_args(args) -> Grid:
    base = PRESETS[args.figure] if args.figure else Grid()
    overrides = {
        "patterns": args.patterns, "rules": args.rules, "links": args.links,
        "examples": args.examples, "ks": args.ks, "fracs": args.fracs, "num_gps": args.num_gps,
    }
    fields = {k: getattr(base, k) for k in ("patterns", "rules", "links", "examples", "ks", "fracs", "num_gps", "runs")}
    for k, v in overrides.items():
        if v is not None:
            fields[k] = tuple(v) if isinstance(v, list) else v
    grid = Grid(**fields)
    for pat in grid.patterns:
        if pat not in {c.value for c in CorePattern}:
            raise UsageError(f"gpforge bench: error: unknown pattern {pat!r}")
    for rule in grid.rules or ():
        if rule not in {r.value for r in GenRuleKind}:
            raise UsageError(f"gpforge bench: error: unknown rule {rule!r}")
    if any(x < 0 for x in grid.links) or any(x < 1 for x in grid.examples) or any(x < 2 for x in grid.ks):
        raise UsageError("gpforge bench: error: links >= 0, examples >= 1 and k >= 2 are required")
    if any(not 0.0 < f <= 1.0 for f in grid.fracs):
        raise UsageError("gpforge bench: error: frac values must be in (0, 1]")
    return grid


def cmd_bench(args) -> int:
    grid = _grid_from_args(args)
    runs = args.runs if args.runs is not None else grid.runs
    config = grid_config(grid, runs, args.seed, args.figure)
    t0 = time.perf_counter()
    results = run_experiment(grid, runs=runs, base_seed=args.seed, workers=worker_count())
    stats = aggregate(results, args.seed)
    out = args.output
    out.mkdir(parents=True, exist_ok=True)
    (out / "runs.csv").write_text(runs_csv(results, config, timing=args.timing), encoding="utf-8")
    (out / "aggregate.csv").write_text(aggregate_csv(stats, config), encoding="utf-8")
    print(f"seed: {args.seed}")
    print(f"cells: {len(stats)} runs: {len(results)} errors: {sum(1 for r in results if r.note)}")
    for s in stats:
        c = s.cell
        print(
            f"{c.pattern:4} {c.rule:6} links={c.links:<4} ex={c.examples} k={c.k} frac={c.frac:g} "
            f"P={s.precision_mean:.3f} R={s.recall_mean:.3f} S={s.soundness_mean:.3f}"
        )
    if args.timing:
        print(f"elapsed: {time.perf_counter() - t0:.1f} s")
    print(f"wrote {out / 'runs.csv'} and {out / 'aggregate.csv'}")
    return EXIT_OK


COMMANDS = {"mine": cmd_mine, "synth": cmd_synth, "score": cmd_score, "bench": cmd_bench}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (GraphError, OSError, ValueError) as exc:
        print(f"gpforge: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:
        print(f"gpforge: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
