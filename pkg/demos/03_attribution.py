"""
Why is theme=Art believed?
==========================

Removal and Shapley attributions on the exhibition case study.
c5 is the claim theme=Art.
"""

from qbafx import SolverConfig, datasets, explain_all

q = datasets.case_study()
cfg = SolverConfig()

removal = explain_all(q, cfg, "c5", kind="arguments", method="removal")
exact = explain_all(q, cfg, "c5", kind="arguments", method="shapley_exact")

print(f"{'arg':>4} {'removal':>10} {'shapley':>10}")
for t in removal.targets():
    print(f"{t:>4} {removal.value(t):10.6f} {exact.value(t):10.6f}")

# removal misses most of s7..s10's influence: each of them alone is
# nearly redundant once the others are present
total = sum(v for _, v in exact)
print("shapley total:", round(total, 9))

# 34 edges is too many to enumerate, so sample orderings instead
edges = explain_all(q, cfg, "c5", kind="relations", method="shapley_sampled", samples=1000, seed=42)
for e, v in edges.entries[:4] + edges.entries[-2:]:
    print(f"{e.label:>9} {v: .5f}")
