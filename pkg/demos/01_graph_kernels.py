"""Labelled digraphs, subgraph matching and canonical codes.

Two drawings of a feed-forward loop get the same canonical code, and the
matcher lists every place the loop sits inside a bigger graph.
"""

from gpforge.canon import canonical_form
from gpforge.graph import LabeledDigraph
from gpforge.matching import is_isomorphic, subgraph_match

ffl = LabeledDigraph(range(3), [(0, 1), (0, 2), (1, 2)])
redrawn = LabeledDigraph([7, 8, 9], [(9, 8), (9, 7), (8, 7)])
print("isomorphic:", is_isomorphic(ffl, redrawn))
print("same canonical code:", canonical_form(ffl) == canonical_form(redrawn))

# two loops sharing vertex 2
host = LabeledDigraph(range(5), [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
for emb in subgraph_match(ffl, host):
    print("embedding:", emb)
