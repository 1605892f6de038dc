"""Argument strengths and attribution explanations for quantitative bipolar argumentation."""

from .errors import *  # noqa: F401,F403
from .framework import (
    QBAF,
    Edge,
    Polarity,
    build_qbaf,
    load_qbaf,
    parse_qbaf_json,
    rename_arguments,
    restrict_arguments,
    restrict_edges,
    save_qbaf,
    serialize_qbaf_json,
    with_base_scores,
)
from .semantics import SolveOutcome, SolverConfig, energy, qe_update, solve_qe
from .truth_discovery import TDN, Claim, Report, claim_labels, induce_qbaf, parse_reports
from .attribution import (
    AttributionReport,
    CoalitionGame,
    coalition_value_arguments,
    coalition_value_edges,
    explain_all,
    parse_attribution_csv,
    removal_aae,
    removal_rae,
    shapley_exact,
    shapley_sampled,
)
from .render import RenderSpec, render_dot
from . import datasets

__version__ = "0.1.0"
