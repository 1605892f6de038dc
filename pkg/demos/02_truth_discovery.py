"""
From source reports to an argument graph
========================================

Every source backs the claims it reports, and claims on the same object
with different values attack each other.
"""

from qbafx import datasets, induce_qbaf, solve_qe, SolverConfig

reports = datasets.case_study_reports()
print(len(reports.sources), "sources,", len(reports.reports), "reports")
for obj in sorted(reports.domains):
    print(f"  {obj}: {sorted(reports.domains[obj])}")

q = induce_qbaf(reports)
print(len(q.arguments), "arguments,", len(q.attacks), "attacks,", len(q.supports), "supports")

# claims start at zero and only gain strength through their supporters
s = solve_qe(q, SolverConfig()).strengths
claims = sorted((a for a in q.arguments if "=" in a), key=s.get, reverse=True)
for c in claims:
    print(f"{c:>14}  {s[c]:.4f}")
