"""Mining generalized patterns end to end.

A graph holds three feed-forward loops. Only two are given as examples.
The pipeline recovers the third from the induced cores.
"""

from gpforge.graph import LabeledDigraph
from gpforge.pipeline import run_pipeline

edges = [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (7, 8), (7, 9), (8, 9), (3, 4), (6, 7)]
g = LabeledDigraph(range(1, 10), edges)

res = run_pipeline(g, [{1, 2, 3}, {4, 5, 6}], k=3)
print("negatives:", len(res.negatives), "cores:", len(res.cores))
for gp in res.gps:
    print("GP", sorted(gp.vertex_set), "grown from core with", gp.core.m, "edges")
