"""From examples to cores.

The positives are intersected pairwise into a lattice of common subgraphs.
The most general survivors are then relaxed until no negative example can
host them over a flagged edge.
"""

from gpforge.cores import induce_cores
from gpforge.graph import LabeledDigraph
from gpforge.negatives import extract_negative_examples

g = LabeledDigraph(range(1, 7), [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 4)])
sets = [{1, 2, 3}, {4, 5, 6}]
negs = extract_negative_examples(g, sets, 3)
ind = induce_cores([g.induced_subgraph(s) for s in sets], negs)

print("lattice elements:", len(ind.lattice.elements))
for h in ind.hypotheses:
    print("hypothesis edges:", sorted(h.graph.edges))
for c in ind.cores:
    print("core edges:", sorted(c.edges))
