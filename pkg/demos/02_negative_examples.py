"""Where do negative examples come from?

Edges that leave a user example are suspicious: they touch a pattern but
are not part of it. Small connected pieces around them become negatives.
"""

from gpforge.graph import LabeledDigraph
from gpforge.io import format_graph
from gpforge.negatives import extract_negative_examples, negative_edges

# two out-stars 1->{2,3} and 4->{5,6}, joined by 3->4
g = LabeledDigraph(range(1, 7), [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 4)])
positives = [{1, 2, 3}, {4, 5, 6}]

edges, _ = negative_edges(g, positives)
print("edges crossing an example boundary:", sorted(edges))

for k in (2, 3):
    negs = extract_negative_examples(g, positives, k)
    print(f"\nk={k}: {len(negs)} negative example(s)")
    for n in negs:
        print(format_graph(n, with_flags=True))
