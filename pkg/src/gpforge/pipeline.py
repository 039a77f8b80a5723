"""End-to-end mining from user examples: negatives, cores, GPs."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

import numpy as np

from gpforge.cores import CoreInduction, induce_cores
from gpforge.graph import LabeledDigraph
from gpforge.mining import GpResult, mine_gps
from gpforge.negatives import check_positive_sets, extract_negative_examples


@dataclass
class PipelineResult:
    positives: List[frozenset]
    negatives: list
    induction: CoreInduction
    gps: List[GpResult]
    timings: dict = field(default_factory=dict)

    @property
    def cores(self) -> list:
        return self.induction.cores

    @property
    def found(self) -> List[frozenset]:
        return [gp.vertex_set for gp in self.gps]


def run_pipeline(
    host: LabeledDigraph,
    positives: Iterable[Iterable],
    k: int = 4,
    sample_frac: float = 1.0,
    rng: Optional[np.random.Generator] = None,
) -> PipelineResult:
    """Mine the GPs of ``host`` resembling the positive vertex sets."""
    host = host.without_flags()
    sets = check_positive_sets(host, positives)
    if not sets:
        raise ValueError("at least one positive example is required")
    timings = {}
    t0 = time.perf_counter()
    negatives = extract_negative_examples(host, sets, k, sample_frac, rng)
    t1 = time.perf_counter()
    induction = induce_cores([host.induced_subgraph(s) for s in sets], negatives)
    t2 = time.perf_counter()
    gps = mine_gps(host, induction.cores, k)
    t3 = time.perf_counter()
    timings.update(negatives=t1 - t0, cores=t2 - t1, mining=t3 - t2)
    return PipelineResult(sets, negatives, induction, gps, timings)
