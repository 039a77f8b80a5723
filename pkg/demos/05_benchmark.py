"""A tiny planted benchmark.

Generate an instance with planted bi-fan GPs, mine it from three examples,
then run a small seeded grid and print precision and recall per cell.
"""

from gpforge.evaluation import Grid, aggregate, run_experiment, score
from gpforge.patterns import InstanceConfig, generate_instance
from gpforge.pipeline import run_pipeline

inst = generate_instance(InstanceConfig("bp2", "strong", 10, 20, seed=1))
res = run_pipeline(inst.graph, inst.truth[:3], k=4)
s = score(res.found, inst.truth)
print(f"single instance: precision={s.precision:.2f} recall={s.recall:.2f}")

grid = Grid(patterns=("bp1", "bp2"), links=(10, 50), runs=3, num_gps=10)
for st in aggregate(run_experiment(grid, base_seed=0)):
    c = st.cell
    print(f"{c.pattern} links={c.links}: P={st.precision_mean:.2f} R={st.recall_mean:.2f}")
