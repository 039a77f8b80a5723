"""Scoring against planted GPs and seeded experiment grids."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from gpforge.patterns import DEFAULT_RULE, CorePattern, GenRuleKind, InstanceConfig, generate_instance
from gpforge.pipeline import run_pipeline

MATCHING_POLICY = "exact"

RUN_COLUMNS = [
    "pattern", "rule", "links", "examples", "k", "frac", "run",
    "precision", "recall", "soundness", "wall_ms", "note",
]
AGG_COLUMNS = [
    "pattern", "rule", "links", "examples", "k", "frac", "runs", "errors",
    "precision_mean", "precision_std", "recall_mean", "recall_std",
    "soundness_mean", "soundness_std",
]

LINK_GRID = (10, 25, 50, 75, 100, 150, 200)


@dataclass(frozen=True)
class Score:
    precision: float
    recall: float
    soundness: float


def score(found: Iterable[Iterable], truth: Iterable[Iterable]) -> Score:
    """Exact-set precision/recall plus soundness (found sets inside a true GP).

    An empty ``found`` list scores precision and soundness 1.0.
    """
    found = [frozenset(f) for f in found]
    truth = [frozenset(t) for t in truth]
    truth_set = set(truth)
    tp = sum(1 for f in found if f in truth_set)
    matched = len({f for f in found if f in truth_set})
    precision = tp / len(found) if found else 1.0
    recall = matched / len(truth) if truth else 1.0
    if found:
        sound = sum(1 for f in found if any(f <= t for t in truth)) / len(found)
    else:
        sound = 1.0
    return Score(precision, recall, sound)


@dataclass
class Grid:
    patterns: Sequence[str] = ("wp1", "wp2", "bp1", "bp2")
    rules: Optional[Sequence[str]] = None
    links: Sequence[int] = LINK_GRID
    examples: Sequence[int] = (3,)
    ks: Sequence[int] = (4,)
    fracs: Sequence[float] = (1.0,)
    num_gps: int = 20
    runs: int = 10

    def cells(self) -> list:
        out = []
        for pat in self.patterns:
            p = CorePattern(pat)
            rules = self.rules or [DEFAULT_RULE[p].value]
            for rule in rules:
                r = GenRuleKind(rule)
                if r is GenRuleKind.CHAIN and not p.is_web:
                    continue
                if p.is_web and r is not GenRuleKind.CHAIN:
                    r = GenRuleKind.CHAIN
                for links, ex, k, frac in itertools.product(self.links, self.examples, self.ks, self.fracs):
                    cell = Cell(p.value, r.value, int(links), int(ex), int(k), float(frac))
                    if cell not in out:
                        out.append(cell)
        return out


PRESETS = {
    "fig8": Grid(),
    "fig9": Grid(patterns=("bp1", "bp2"), rules=("strong", "weak")),
    "fig10": Grid(links=(50,), examples=(1, 2, 3, 4, 5)),
    "fig11": Grid(fracs=(0.1,)),
    "smoke": Grid(patterns=("bp1",), links=(0,), runs=1, num_gps=5),
}


@dataclass(frozen=True)
class Cell:
    pattern: str
    rule: str
    links: int
    examples: int
    k: int
    frac: float


@dataclass
class RunResult:
    cell: Cell
    run: int
    score: Score
    wall_ms: float
    note: str = ""
    found: list = field(default_factory=list)


def _seed(*parts: int) -> int:
    ss = np.random.SeedSequence([int(p) for p in parts])
    hi, lo = ss.generate_state(2, dtype=np.uint32)
    return (int(hi) << 32) | int(lo)


def _pattern_index(cell: Cell) -> tuple:
    return (
        list(CorePattern).index(CorePattern(cell.pattern)),
        list(GenRuleKind).index(GenRuleKind(cell.rule)),
    )


def instance_seed(base_seed: int, cell: Cell, run: int) -> int:
    """Instance seed shared by all cells differing only in examples, k or frac."""
    pi, ri = _pattern_index(cell)
    return _seed(base_seed, pi, ri, cell.links, run)


def run_cell(cell: Cell, run: int, base_seed: int, num_gps: int = 20) -> RunResult:
    """Generate the instance for ``(cell, run)``, mine it, and score the result."""
    t0 = time.perf_counter()
    try:
        inst = generate_instance(
            InstanceConfig(cell.pattern, cell.rule, num_gps, cell.links, instance_seed(base_seed, cell, run))
        )
        pi, ri = _pattern_index(cell)
        pick_rng = np.random.default_rng(_seed(base_seed, pi, ri, cell.links, run, cell.examples))
        count = min(cell.examples, len(inst.truth))
        chosen = sorted(pick_rng.choice(len(inst.truth), size=count, replace=False))
        positives = [inst.truth[i] for i in chosen]
        frac_key = int(round(cell.frac * 1_000_000))
        sample_rng = np.random.default_rng(
            _seed(base_seed, pi, ri, cell.links, run, cell.examples, cell.k, frac_key)
        )
        result = run_pipeline(inst.graph, positives, cell.k, cell.frac, sample_rng)
        found = result.found
        sc = score(found, inst.truth)
        note = ""
    except Exception as exc:  # recorded per run, the grid keeps going
        found = []
        sc = Score(0.0, 0.0, 0.0)
        note = f"{type(exc).__name__}: {exc}"
    wall = (time.perf_counter() - t0) * 1000.0
    return RunResult(cell, run, sc, wall, note, found)


def _run_job(args):
    cell, run, base_seed, num_gps = args
    res = run_cell(cell, run, base_seed, num_gps)
    res.found = []
    return res


def worker_count() -> int:
    env = os.environ.get("GPFORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


@dataclass
class ExperimentStats:
    cell: Cell
    runs: int
    errors: int
    precision_mean: float
    precision_std: float
    recall_mean: float
    recall_std: float
    soundness_mean: float
    soundness_std: float
    seeds: List[int] = field(default_factory=list)


def _mean_std(xs: Sequence[float]):
    arr = np.asarray(xs, dtype=float)
    if len(arr) == 0:
        return math.nan, math.nan
    std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
    return float(arr.mean()), std


def aggregate(results: Sequence[RunResult], base_seed: int = 0) -> List[ExperimentStats]:
    by_cell: Dict[Cell, List[RunResult]] = {}
    for r in results:
        by_cell.setdefault(r.cell, []).append(r)
    out = []
    for cell, rs in by_cell.items():
        rs = sorted(rs, key=lambda r: r.run)
        pm, ps = _mean_std([r.score.precision for r in rs])
        rm, rsd = _mean_std([r.score.recall for r in rs])
        sm, ssd = _mean_std([r.score.soundness for r in rs])
        out.append(
            ExperimentStats(
                cell, len(rs), sum(1 for r in rs if r.note), pm, ps, rm, rsd, sm, ssd,
                [instance_seed(base_seed, cell, r.run) for r in rs],
            )
        )
    return out


def run_experiment(
    grid: Grid,
    runs: Optional[int] = None,
    base_seed: int = 0,
    workers: Optional[int] = None,
    keep_found: bool = False,
) -> List[RunResult]:
    """Run every grid cell ``runs`` times; results ordered by (cell, run)."""
    runs = grid.runs if runs is None else runs
    if runs < 1:
        raise ValueError("runs must be at least 1")
    jobs = [(cell, run, base_seed, grid.num_gps) for cell in grid.cells() for run in range(runs)]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_job, jobs, chunksize=1))
    if keep_found:
        return [run_cell(*job) for job in jobs]
    return [_run_job(job) for job in jobs]


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def runs_csv(results: Sequence[RunResult], config: dict, timing: bool = False) -> str:
    """Per-run CSV; ``wall_ms`` stays empty unless ``timing`` is set."""
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RUN_COLUMNS)
    for r in results:
        c = r.cell
        w.writerow([
            c.pattern, c.rule, c.links, c.examples, c.k, c.frac, r.run,
            _fmt(r.score.precision), _fmt(r.score.recall), _fmt(r.score.soundness),
            f"{r.wall_ms:.1f}" if timing else "", r.note,
        ])
    return buf.getvalue()


def aggregate_csv(stats: Sequence[ExperimentStats], config: dict) -> str:
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(AGG_COLUMNS)
    for s in stats:
        c = s.cell
        w.writerow([
            c.pattern, c.rule, c.links, c.examples, c.k, c.frac, s.runs, s.errors,
            _fmt(s.precision_mean), _fmt(s.precision_std),
            _fmt(s.recall_mean), _fmt(s.recall_std),
            _fmt(s.soundness_mean), _fmt(s.soundness_std),
        ])
    return buf.getvalue()


def grid_config(grid: Grid, runs: int, base_seed: int, preset: Optional[str] = None) -> dict:
    cfg = asdict(grid)
    cfg = {k: list(v) if isinstance(v, tuple) else v for k, v in cfg.items()}
    cfg.update(runs=runs, base_seed=base_seed, matching=MATCHING_POLICY)
    if preset:
        cfg["preset"] = preset
    return cfg
