"""
Gradual strengths on a four-argument graph
==========================================

alpha is attacked by beta and supported by gamma and delta.
"""

from qbafx import SolverConfig, build_qbaf, energy, solve_qe

q = build_qbaf(
    ["alpha", "beta", "gamma", "delta"],
    attacks=[("beta", "delta"), ("beta", "alpha")],
    supports=[("gamma", "delta"), ("gamma", "alpha"), ("delta", "alpha")],
    base_scores={"alpha": 0.8, "beta": 0.6, "gamma": 0.9, "delta": 0.7},
)

# beta and gamma have no parents, so they keep their base scores
out = solve_qe(q, SolverConfig())
for a in q.arguments:
    print(f"{a:>6}  tau={q.base_score(a):.2f}  sigma={out.strengths[a]:.6f}")
print("iterations:", out.iterations_used)

# net pull on delta at the start: gamma (0.9) minus beta (0.6)
print("energy of delta at tau:", round(energy(q, q.base_scores, "delta"), 3))

# on an acyclic graph one sweep per layer is enough; cycles need more,
# and a tighter tolerance costs more sweeps
loop = build_qbaf(["a", "b"], [], [("a", "b"), ("b", "a")], {"a": 0.5, "b": 0.5})
for tol in (1e-3, 1e-6, 1e-12):
    res = solve_qe(loop, SolverConfig(tolerance=tol))
    print(f"tol={tol:g}  sweeps={res.iterations_used}  a={res.strengths['a']:.12f}")
