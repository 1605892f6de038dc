"""Truth-discovery networks and the frameworks they induce.

Sources report values for objects.  Each distinct ``(object, value)`` pair
becomes a claim argument with id ``object=value``; a source and each of its
claims support one another, and claims giving different values for the same
object attack one another.  Sources start at 0.5, claims at 0.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable

from .errors import BadArgumentId, IdCollision, InconsistentSource, ParseError
from .framework import QBAF, build_qbaf, check_argument_id, natural_key

SOURCE_BASE_SCORE = 0.5
CLAIM_BASE_SCORE = 0.0
HEADER = ["source", "object", "value"]


@dataclass(frozen=True, order=True)
class Report:
    source: str
    object: str
    value: str

    def __post_init__(self):
        for name in ("source", "object", "value"):
            v = getattr(self, name)
            if not isinstance(v, str) or not v:
                raise ValueError(f"report {name} must be a non-empty string")


@dataclass(frozen=True)
class Claim:
    object: str
    value: str

    @property
    def id(self) -> str:
        return f"{self.object}={self.value}"


@dataclass(frozen=True)
class TDN:
    sources: frozenset
    objects: frozenset
    domains: dict = field(hash=False)
    reports: frozenset

    @classmethod
    def from_reports(cls, reports: Iterable[Report], objects: Iterable[str] = ()) -> "TDN":
        """Build a TDN, inferring each object's domain from the values reported for it."""
        reports = frozenset(reports)
        claimed: dict[tuple[str, str], str] = {}
        for r in sorted(reports):
            prev = claimed.setdefault((r.source, r.object), r.value)
            if prev != r.value:
                raise InconsistentSource(
                    f"source {r.source!r} reports both {prev!r} and {r.value!r} for object {r.object!r}"
                )
        domains: dict[str, set] = {o: set() for o in objects}
        for r in reports:
            domains.setdefault(r.object, set()).add(r.value)
        return cls(
            sources=frozenset(r.source for r in reports),
            objects=frozenset(domains),
            domains={o: frozenset(v) for o, v in domains.items()},
            reports=reports,
        )

    def claims(self) -> list[Claim]:
        found = {Claim(r.object, r.value) for r in self.reports}
        return sorted(found, key=lambda c: natural_key(c.id))


def parse_reports(text: str) -> TDN:
    """Read a ``source,object,value`` CSV into a :class:`TDN`; duplicate rows collapse."""
    rows = csv.reader(io.StringIO(text))
    try:
        header = next(rows)
    except StopIteration:
        raise ParseError("empty report file", line=1) from None
    if [h.strip() for h in header] != HEADER:
        raise ParseError(f"header must be {','.join(HEADER)}", line=1)
    reports = []
    for lineno, row in enumerate(rows, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=lineno)
        src, obj, val = (c.strip() for c in row)
        for name, v in (("source", src), ("object", obj), ("value", val)):
            if not v:
                raise ParseError("empty field", line=lineno, field=name)
        if "=" in obj:
            raise ParseError("object names may not contain '='", line=lineno, field="object")
        try:
            check_argument_id(src)
            check_argument_id(f"{obj}={val}")
        except BadArgumentId as exc:
            raise ParseError(str(exc), line=lineno) from None
        reports.append(Report(src, obj, val))
    return TDN.from_reports(reports)


def induce_qbaf(n: TDN) -> QBAF:
    claims = n.claims()
    claim_ids = [c.id for c in claims]
    clash = n.sources.intersection(claim_ids)
    if clash:
        raise IdCollision(f"source id {sorted(clash)[0]!r} equals a claim id")
    supports = []
    for r in n.reports:
        cid = Claim(r.object, r.value).id
        supports.append((r.source, cid))
        supports.append((cid, r.source))
    attacks = [
        (a.id, b.id)
        for a in claims
        for b in claims
        if a.object == b.object and a.value != b.value
    ]
    scores = {s: SOURCE_BASE_SCORE for s in n.sources}
    scores.update({c: CLAIM_BASE_SCORE for c in claim_ids})
    return build_qbaf(list(n.sources) + claim_ids, attacks, supports, scores)


def claim_labels(n: TDN) -> dict:
    """Sidecar document mapping claim ids back to their object and value."""
    return {
        "claims": [{"id": c.id, "object": c.object, "value": c.value} for c in n.claims()]
    }
