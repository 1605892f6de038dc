"""
Drawing an attribution as Graphviz
==================================

Writes case_study_edges.dot into the working directory.
Render it with ``dot -Tsvg case_study_edges.dot -o out.svg``.
"""

import pathlib

from qbafx import SolverConfig, datasets, explain_all, render_dot

q = datasets.case_study()
report = explain_all(q, SolverConfig(), "c5", kind="relations", method="removal")

dot = render_dot(q, report)
target = pathlib.Path("case_study_edges.dot")
target.write_text(dot)
print(dot.splitlines()[0], "...", len(dot.splitlines()), "lines ->", target)
