"""Mining generalized graph patterns from a handful of user examples."""

from gpforge.canon import canonical_form, dedupe
from gpforge.cores import (
    Hypothesis,
    build_positive_lattice,
    generate_cores,
    relax_hypothesis,
    strong_match,
)
from gpforge.enumeration import enumerate_connected_subgraphs
from gpforge.evaluation import Grid, Score, aggregate, run_experiment, score
from gpforge.graph import (
    LABELS_ONLY,
    WITH_FLAGS,
    GraphError,
    LabeledDigraph,
    MatchMode,
    induced_subgraph,
)
from gpforge.io import ParseError, format_graph, parse_graph, read_graph, write_graph
from gpforge.matching import is_isomorphic, is_subgraph, subgraph_match
from gpforge.mcs import maximal_common_subgraphs
from gpforge.mining import GpResult, check_theorem1_conditions, grow_gp, mine_gps, natural_expansions
from gpforge.negatives import extract_negative_examples, negative_edges
from gpforge.patterns import (
    CorePattern,
    GenRuleKind,
    Instance,
    InstanceConfig,
    generate_instance,
    instantiate_gp,
    role_orbits,
)
from gpforge.pipeline import PipelineResult, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "LABELS_ONLY", "WITH_FLAGS", "CorePattern", "GenRuleKind", "GpResult", "GraphError", "Grid",
    "Hypothesis", "Instance", "InstanceConfig", "LabeledDigraph", "MatchMode", "ParseError",
    "PipelineResult", "Score", "aggregate", "build_positive_lattice", "canonical_form",
    "check_theorem1_conditions", "dedupe", "enumerate_connected_subgraphs",
    "extract_negative_examples", "format_graph", "generate_cores", "generate_instance", "grow_gp",
    "induced_subgraph", "instantiate_gp", "is_isomorphic", "is_subgraph",
    "maximal_common_subgraphs", "mine_gps", "natural_expansions", "negative_edges", "parse_graph",
    "read_graph", "relax_hypothesis", "role_orbits", "run_experiment", "run_pipeline", "score",
    "strong_match", "subgraph_match", "write_graph",
]
