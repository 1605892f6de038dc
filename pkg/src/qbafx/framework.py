"""Quantitative bipolar argumentation frameworks.

A :class:`QBAF` is an immutable value: a set of arguments, attack and support
edges between them, and a base score in ``[0, 1]`` per argument.  Arguments
and edges are kept in a canonical (natural) order so that two frameworks built
from the same sets compare equal and every downstream numeric routine sees the
same summation order.
"""

from __future__ import annotations

import enum
import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    BadArgumentId,
    BadBaseScore,
    DomainMismatch,
    DuplicateArgumentId,
    ParseError,
    PolarityConflict,
    SelfLoop,
    UnknownArgument,
    UnknownEdge,
    UnknownEndpoint,
)

_ID_RE = re.compile(r"^[^\s,]+$")
_CHUNK_RE = re.compile(r"(\d+)")


def natural_key(text: str):
    """Sort key that orders ``s2`` before ``s10``."""
    parts = []
    for chunk in _CHUNK_RE.split(text):
        if not chunk:
            continue
        if chunk.isdigit():
            parts.append((0, int(chunk), ""))
        else:
            parts.append((1, 0, chunk))
    return (tuple(parts), text)


def check_argument_id(arg) -> str:
    if not isinstance(arg, str) or not _ID_RE.match(arg):
        raise BadArgumentId(
            f"invalid argument id {arg!r}: must be a non-empty string without whitespace or commas"
        )
    return arg


class Polarity(str, enum.Enum):
    ATTACK = "attack"
    SUPPORT = "support"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    polarity: Polarity

    def __post_init__(self):
        object.__setattr__(self, "polarity", Polarity(self.polarity))

    @property
    def pair(self) -> tuple[str, str]:
        return (self.source, self.target)

    @property
    def label(self) -> str:
        """Parenthesised ``(src,dst)`` notation."""
        return f"({self.source},{self.target})"

    def sort_key(self):
        return (natural_key(self.source), natural_key(self.target))

    def __str__(self):
        return self.label


def _check_score(arg, value) -> float:
    try:
        score = float(value)
    except (TypeError, ValueError):
        raise BadBaseScore(f"base score of {arg!r} is not a number: {value!r}") from None
    if isinstance(value, bool) or not (0.0 <= score <= 1.0) or math.isnan(score):
        raise BadBaseScore(f"base score of {arg!r} must lie in [0, 1], got {value!r}")
    return score


@dataclass(frozen=True)
class QBAF:
    """Validated framework. Build with :func:`build_qbaf`, not the constructor."""

    arguments: tuple[str, ...]
    edges: tuple[Edge, ...]
    scores: tuple[float, ...]

    @property
    def base_scores(self) -> dict[str, float]:
        return dict(zip(self.arguments, self.scores))

    @property
    def attacks(self) -> tuple[tuple[str, str], ...]:
        return tuple(e.pair for e in self.edges if e.polarity is Polarity.ATTACK)

    @property
    def supports(self) -> tuple[tuple[str, str], ...]:
        return tuple(e.pair for e in self.edges if e.polarity is Polarity.SUPPORT)

    def __len__(self):
        return len(self.arguments)

    def __contains__(self, arg):
        return arg in self.arguments

    def index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.arguments)}

    def base_score(self, arg: str) -> float:
        try:
            return self.scores[self.arguments.index(arg)]
        except ValueError:
            raise UnknownArgument(f"unknown argument {arg!r}") from None

    def require_argument(self, arg: str) -> None:
        if arg not in self.arguments:
            raise UnknownArgument(f"unknown argument {arg!r}")

    def require_edge(self, edge: Edge) -> None:
        if edge not in self.edges:
            raise UnknownEdge(f"unknown edge {edge.label} ({edge.polarity})")

    def find_edge(self, source: str, target: str) -> Edge:
        for e in self.edges:
            if e.source == source and e.target == target:
                return e
        raise UnknownEdge(f"no edge ({source},{target})")

    def attackers(self, arg: str) -> list[str]:
        return [e.source for e in self.edges if e.target == arg and e.polarity is Polarity.ATTACK]

    def supporters(self, arg: str) -> list[str]:
        return [e.source for e in self.edges if e.target == arg and e.polarity is Polarity.SUPPORT]

    def validate(self) -> None:
        """Re-check every structural invariant; raises on the first violation."""
        if len(set(self.arguments)) != len(self.arguments):
            raise DuplicateArgumentId("duplicate argument ids")
        if len(self.scores) != len(self.arguments):
            raise BadBaseScore("base scores not defined for exactly the argument set")
        for a, s in zip(self.arguments, self.scores):
            check_argument_id(a)
            _check_score(a, s)
        known = set(self.arguments)
        seen: dict[tuple[str, str], Polarity] = {}
        for e in self.edges:
            if e.source not in known or e.target not in known:
                raise UnknownEndpoint(f"edge {e.label} references a missing argument")
            if e.source == e.target:
                raise SelfLoop(f"self-loop on {e.source!r}")
            if e.pair in seen:
                raise PolarityConflict(f"pair {e.label} carries both attack and support")
            seen[e.pair] = e.polarity


def _make(arguments: Iterable[str], edges: Iterable[Edge], scores: Mapping[str, float]) -> QBAF:
    args = tuple(sorted(arguments, key=natural_key))
    return QBAF(
        arguments=args,
        edges=tuple(sorted(set(edges), key=Edge.sort_key)),
        scores=tuple(float(scores[a]) for a in args),
    )


def build_qbaf(arguments, attacks=(), supports=(), base_scores=None) -> QBAF:
    """Validate raw inputs and return a :class:`QBAF`.

    ``attacks`` and ``supports`` are iterables of ``(source, target)`` pairs;
    repeated pairs are collapsed.
    """
    base_scores = dict(base_scores or {})
    args = list(arguments)
    seen = set()
    for a in args:
        check_argument_id(a)
        if a in seen:
            raise DuplicateArgumentId(f"duplicate argument id {a!r}")
        seen.add(a)
    missing = [a for a in args if a not in base_scores]
    if missing:
        raise BadBaseScore(f"missing base score for {missing[0]!r}")
    extra = [a for a in base_scores if a not in seen]
    if extra:
        raise UnknownArgument(f"base score given for unknown argument {extra[0]!r}")
    scores = {a: _check_score(a, base_scores[a]) for a in args}

    pairs: dict[tuple[str, str], Polarity] = {}
    for polarity, rel in ((Polarity.ATTACK, attacks), (Polarity.SUPPORT, supports)):
        for pair in rel:
            try:
                src, dst = pair
            except (TypeError, ValueError):
                raise UnknownEndpoint(f"malformed edge {pair!r}") from None
            for end in (src, dst):
                if end not in seen:
                    raise UnknownEndpoint(f"edge ({src},{dst}) references unknown argument {end!r}")
            if src == dst:
                raise SelfLoop(f"self-loop on {src!r}")
            prev = pairs.get((src, dst))
            if prev is not None and prev is not polarity:
                raise PolarityConflict(f"pair ({src},{dst}) is both an attack and a support")
            pairs[(src, dst)] = polarity

    return _make(args, (Edge(s, t, p) for (s, t), p in pairs.items()), scores)


def restrict_arguments(q: QBAF, keep) -> QBAF:
    """Sub-framework induced by ``keep``: edges survive only if both endpoints do."""
    keep = set(keep)
    for a in keep:
        if a not in q.arguments:
            raise UnknownArgument(f"cannot keep unknown argument {a!r}")
    return QBAF(
        arguments=tuple(a for a in q.arguments if a in keep),
        edges=tuple(e for e in q.edges if e.source in keep and e.target in keep),
        scores=tuple(s for a, s in zip(q.arguments, q.scores) if a in keep),
    )


def restrict_edges(q: QBAF, keep) -> QBAF:
    """Same arguments and base scores, edge set replaced by ``keep``."""
    keep = set(keep)
    present = set(q.edges)
    for e in keep:
        if e not in present:
            raise UnknownEdge(f"cannot keep unknown edge {e}")
    return QBAF(q.arguments, tuple(e for e in q.edges if e in keep), q.scores)


def with_base_scores(q: QBAF, tau_prime: Mapping[str, float]) -> QBAF:
    if set(tau_prime) != set(q.arguments):
        missing = sorted(set(q.arguments) - set(tau_prime), key=natural_key)
        extra = sorted(set(tau_prime) - set(q.arguments), key=natural_key)
        raise DomainMismatch(f"base scores must cover exactly the arguments (missing {missing}, extra {extra})")
    return QBAF(q.arguments, q.edges, tuple(_check_score(a, tau_prime[a]) for a in q.arguments))


def rename_arguments(q: QBAF, mapping: Mapping[str, str]) -> QBAF:
    """Rename arguments; ids absent from ``mapping`` are kept as they are."""
    new = {a: check_argument_id(mapping.get(a, a)) for a in q.arguments}
    if len(set(new.values())) != len(new):
        raise DuplicateArgumentId("renaming maps two arguments to the same id")
    return _make(
        new.values(),
        (Edge(new[e.source], new[e.target], e.polarity) for e in q.edges),
        {new[a]: s for a, s in zip(q.arguments, q.scores)},
    )


def topic_component(q: QBAF, topic: str) -> QBAF:
    """Weakly connected component of ``q`` containing ``topic``, as a sub-framework."""
    q.require_argument(topic)
    neighbours: dict[str, set] = {a: set() for a in q.arguments}
    for e in q.edges:
        neighbours[e.source].add(e.target)
        neighbours[e.target].add(e.source)
    seen, stack = {topic}, [topic]
    while stack:
        for b in neighbours[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    if len(seen) == len(q.arguments):
        return q
    return restrict_arguments(q, seen)


# JSON

def to_dict(q: QBAF) -> dict:
    return {
        "arguments": [{"id": a, "base_score": s} for a, s in zip(q.arguments, q.scores)],
        "attacks": [list(p) for p in q.attacks],
        "supports": [list(p) for p in q.supports],
    }


def serialize_qbaf_json(q: QBAF, indent=None) -> str:
    # json emits floats via repr: shortest round-trip form, at most 17 significant digits
    return json.dumps(to_dict(q), indent=indent)


def _pairs(doc, key):
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise ParseError(f"{key!r} must be a list", field=key)
    out = []
    for i, item in enumerate(raw):
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, str) for x in item)):
            raise ParseError(f"{key}[{i}] must be a [source, target] pair of strings", field=f"{key}[{i}]")
        out.append(tuple(item))
    return out


def from_dict(doc) -> QBAF:
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    unknown = set(doc) - {"arguments", "attacks", "supports"}
    if unknown:
        raise ParseError(f"unexpected keys {sorted(unknown)}", field=sorted(unknown)[0])
    if "arguments" not in doc or not isinstance(doc["arguments"], list):
        raise ParseError("'arguments' must be a list", field="arguments")
    ids, scores = [], {}
    for i, entry in enumerate(doc["arguments"]):
        where = f"arguments[{i}]"
        if not isinstance(entry, dict) or "id" not in entry or "base_score" not in entry:
            raise ParseError("each argument needs 'id' and 'base_score'", field=where)
        if not isinstance(entry["id"], str):
            raise ParseError("argument id must be a string", field=f"{where}.id")
        score = entry["base_score"]
        if isinstance(score, bool) or not isinstance(score, (int, float)):
            raise ParseError("base_score must be a number", field=f"{where}.base_score")
        ids.append(entry["id"])
        if entry["id"] in scores:
            raise DuplicateArgumentId(f"duplicate argument id {entry['id']!r} at {where}")
        scores[entry["id"]] = score
    return build_qbaf(ids, _pairs(doc, "attacks"), _pairs(doc, "supports"), scores)


def parse_qbaf_json(text: str) -> QBAF:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return from_dict(doc)


def load_qbaf(path) -> QBAF:
    with open(path, encoding="utf-8") as fh:
        return parse_qbaf_json(fh.read())


def save_qbaf(q: QBAF, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_qbaf_json(q, indent=1))
        fh.write("\n")
