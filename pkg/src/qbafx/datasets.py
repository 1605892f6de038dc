"""Bundled fixtures: the four-argument worked example and the exhibition case study."""

import json
from importlib import resources

from .framework import QBAF, parse_qbaf_json, rename_arguments
from .truth_discovery import TDN, induce_qbaf, parse_reports


def _read(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def path(name: str):
    """Filesystem path of a bundled data file (for CLI use)."""
    return resources.files(__package__).joinpath("data", name)


def toy() -> QBAF:
    """alpha is attacked by beta and supported by gamma and delta; delta is attacked by beta, supported by gamma."""
    return parse_qbaf_json(_read("toy.json"))


def case_study_reports() -> TDN:
    return parse_reports(_read("case_study_reports.csv"))


def case_study_claim_ids() -> dict:
    """Short ids ``c0``..``c5`` mapped to the induced ``object=value`` claim ids."""
    return json.loads(_read("case_study_claims.json"))


def case_study() -> QBAF:
    """17-argument exhibition framework with claims renamed to ``c0``..``c5``."""
    return parse_qbaf_json(_read("case_study.json"))


def induced_case_study() -> QBAF:
    short = {v: k for k, v in case_study_claim_ids().items()}
    return rename_arguments(induce_qbaf(case_study_reports()), short)
