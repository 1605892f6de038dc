"""Attribution of a topic argument's strength to arguments or to edges.

Two families of scores:

* removal-based: strength of the topic minus its strength once a single
  argument (with its incident edges) or a single edge is deleted;
* Shapley-based: the topic's strength as a cooperative game whose players are
  the other arguments (the topic itself always stays in play) or the edges.

Exact Shapley values come from enumerating every coalition once and reusing
the value table for all players.  Sampled values average marginal
contributions over random player orderings drawn from a Philox stream keyed
by ``(seed, target)``, so each estimate is independent of which other targets
are evaluated and of worker count.

Every topic strength is computed inside the topic's weakly connected
component.  Parts of the graph the topic cannot interact with then score
exactly zero, instead of picking up stopping-rule noise from a solve that
ran a different number of iterations.
"""

from __future__ import annotations

import csv
import io
import math
import os
import threading
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import (
    NonConvergence,
    ParseError,
    TooLargeForExact,
    TopicEqualsTarget,
    UnknownArgument,
)
from .framework import (
    QBAF,
    Edge,
    natural_key,
    restrict_arguments,
    restrict_edges,
    topic_component,
)
from .semantics import CompiledQBAF, SolverConfig, _rows, solve_qe

Target = Union[str, Edge]

ARGUMENT = "argument"
EDGE = "edge"
KINDS = (ARGUMENT, EDGE)

REMOVAL = "removal"
SHAPLEY_EXACT = "shapley_exact"
SHAPLEY_SAMPLED = "shapley_sampled"
METHODS = (REMOVAL, SHAPLEY_EXACT, SHAPLEY_SAMPLED)

DEFAULT_EXACT_CAP = 20
DEFAULT_SAMPLES = 1000
DEFAULT_SEED = 42

_CHUNK = 4096


def target_label(target: Target) -> str:
    return target.label if isinstance(target, Edge) else target


def target_sort_key(target: Target):
    return target.sort_key() if isinstance(target, Edge) else natural_key(target)


def _kind_of(target: Target) -> str:
    return EDGE if isinstance(target, Edge) else ARGUMENT


def normalize_method(method: str) -> str:
    m = method.replace("-", "_")
    if m not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    return m


def normalize_kind(kind: str) -> str:
    aliases = {"argument": ARGUMENT, "arguments": ARGUMENT, "edge": EDGE, "edges": EDGE,
               "relation": EDGE, "relations": EDGE}
    try:
        return aliases[kind]
    except KeyError:
        raise ValueError(f"unknown attribution kind {kind!r}") from None


def _solve_topic(q: QBAF, cfg: SolverConfig, topic: str, context: str) -> float:
    try:
        return solve_qe(q, cfg).strengths[topic]
    except NonConvergence as exc:
        raise exc.with_context(context) from None


# Removal-based scores

def removal_aae(q: QBAF, cfg: SolverConfig, topic: str, beta: str, *, _full=None) -> float:
    """Drop in the topic's strength caused by deleting ``beta`` and its edges."""
    q.require_argument(topic)
    q.require_argument(beta)
    if beta == topic:
        raise TopicEqualsTarget(f"argument {topic!r} cannot be attributed to itself")
    scope = topic_component(q, topic)
    if beta not in scope:
        return 0.0
    full = _full if _full is not None else _solve_topic(scope, cfg, topic, "full framework")
    rest = restrict_arguments(scope, [a for a in scope.arguments if a != beta])
    return full - _solve_topic(rest, cfg, topic, f"framework without argument {beta}")


def removal_rae(q: QBAF, cfg: SolverConfig, topic: str, r: Edge, *, _full=None) -> float:
    """Drop in the topic's strength caused by deleting edge ``r``."""
    q.require_argument(topic)
    q.require_edge(r)
    scope = topic_component(q, topic)
    if r not in scope.edges:
        return 0.0
    full = _full if _full is not None else _solve_topic(scope, cfg, topic, "full framework")
    rest = restrict_edges(scope, [e for e in scope.edges if e != r])
    return full - _solve_topic(rest, cfg, topic, f"framework without edge {r.label}")


# Coalitional games

class CoalitionGame:
    """Topic strength as a function of which players are present.

    Players are the non-topic arguments (``kind="argument"``) or all edges
    (``kind="edge"``), in canonical order.  Values are memoised for the
    lifetime of the game object.
    """

    def __init__(self, q: QBAF, cfg: SolverConfig, topic: str, kind: str):
        q.require_argument(topic)
        self.qbaf = q
        self.cfg = cfg
        self.topic = topic
        self.kind = normalize_kind(kind)
        scope = topic_component(q, topic)
        self.compiled = CompiledQBAF(scope)
        self.topic_index = self.compiled.index[topic]
        if self.kind == ARGUMENT:
            self.players: list[Target] = [a for a in q.arguments if a != topic]
            live = [i for i, a in enumerate(self.players) if a in self.compiled.index]
            self._scope_args = np.array(
                [self.compiled.index[self.players[i]] for i in live], dtype=np.intp
            )
        else:
            self.players = list(q.edges)
            in_scope = set(scope.edges)
            live = [i for i, e in enumerate(self.players) if e in in_scope]
        # players outside the topic's component never affect its strength
        self._live = np.array(live, dtype=np.intp)
        self.position = {p: i for i, p in enumerate(self.players)}
        self._cache: dict[bytes, float] = {}
        self._lock = threading.Lock()
        self._table = None

    @property
    def size(self) -> int:
        return len(self.players)

    def player_index(self, target: Target) -> int:
        if _kind_of(target) != self.kind:
            raise ValueError(f"target {target_label(target)} is not a {self.kind} player")
        if target == self.topic:
            raise TopicEqualsTarget(f"argument {self.topic!r} cannot be attributed to itself")
        try:
            return self.position[target]
        except KeyError:
            if isinstance(target, Edge):
                self.qbaf.require_edge(target)
            raise UnknownArgument(f"unknown argument {target!r}") from None

    def coalition_from(self, members: Iterable[Target]) -> np.ndarray:
        row = np.zeros(self.size, dtype=bool)
        for t in members:
            row[self.player_index(t)] = True
        return row

    def edge_masks(self, coalitions: np.ndarray) -> np.ndarray:
        """Edge masks over the topic's component for boolean coalition rows."""
        live = _rows(coalitions)[:, self._live]
        if self.kind == EDGE:
            return live
        present = np.zeros((live.shape[0], self.compiled.n), dtype=bool)
        present[:, self._scope_args] = live
        present[:, self.topic_index] = True
        return self.compiled.edge_mask_for_arguments(present)

    def _describe(self, coalition_row) -> str:
        members = [target_label(p) for p, on in zip(self.players, coalition_row) if on]
        return f"topic {self.topic}, coalition {{{', '.join(members)}}}"

    def _solve(self, coalitions: np.ndarray) -> np.ndarray:
        try:
            return self.compiled.topic_values(
                self.topic_index, self.cfg, self.edge_masks(coalitions), chunk=_CHUNK
            )
        except NonConvergence as exc:
            raise exc.with_context(self._describe(coalitions[exc.row])) from None

    def values(self, coalitions) -> np.ndarray:
        """Topic strength for each boolean coalition row, memoised."""
        coalitions = _rows(coalitions)
        if coalitions.shape[0] == 0:
            return np.empty(0)
        keys = [row.tobytes() for row in np.packbits(coalitions[:, self._live], axis=1)]
        with self._lock:
            known = {k: self._cache[k] for k in keys if k in self._cache}
        first: dict[bytes, int] = {}
        for i, k in enumerate(keys):
            if k not in known:
                first.setdefault(k, i)
        if first:
            fresh = dict(zip(first, self._solve(coalitions[list(first.values())]).tolist()))
            with self._lock:
                self._cache.update(fresh)
            known.update(fresh)
        return np.array([known[k] for k in keys])

    def value(self, members: Iterable[Target]) -> float:
        return float(self.values(self.coalition_from(members)[None, :])[0])

    # exact enumeration

    def value_table(self, cap: int = DEFAULT_EXACT_CAP) -> np.ndarray:
        """Values of all ``2**size`` coalitions, indexed by player bitmask."""
        if self.size > cap:
            raise TooLargeForExact(self.size, cap)
        if self._table is not None:
            return self._table
        p = self.size
        total = 1 << p
        table = np.empty(total)
        bits = np.arange(p, dtype=np.int64)
        for start in range(0, total, _CHUNK * 4):
            masks = np.arange(start, min(total, start + _CHUNK * 4), dtype=np.int64)
            rows = ((masks[:, None] >> bits) & 1).astype(bool)
            table[start:start + masks.size] = self._solve(rows)
        self._table = table
        return table

    def shapley_from_table(self, table: np.ndarray, j: int) -> float:
        p = self.size
        masks = np.arange(1 << p, dtype=np.int64)
        without = masks[(masks >> j) & 1 == 0]
        sizes = np.bitwise_count(without)
        weights = np.array([1.0 / (p * math.comb(p - 1, k)) for k in range(p)])
        terms = weights[sizes] * (table[without | (1 << j)] - table[without])
        return math.fsum(terms.tolist())

    # sampling

    def sampled(self, j: int, samples: int, seed: int) -> float:
        if samples < 1:
            raise ValueError("samples must be at least 1")
        rng = np.random.Generator(np.random.Philox(_stream_seed(seed, self.players[j])))
        keys = rng.random((samples, self.size))
        before = keys < keys[:, [j]]
        with_j = before.copy()
        with_j[:, j] = True
        vals = self.values(np.vstack([before, with_j]))
        marginals = vals[samples:] - vals[:samples]
        return math.fsum(marginals.tolist()) / samples


def _stream_seed(seed: int, target: Target) -> np.random.SeedSequence:
    tag = zlib.crc32(target_label(target).encode("utf-8"))
    return np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, tag])


def coalition_value_arguments(q: QBAF, cfg: SolverConfig, topic: str, coalition) -> float:
    """Topic strength in the sub-framework induced by ``coalition`` plus the topic."""
    coalition = set(coalition)
    if topic in coalition:
        raise TopicEqualsTarget("the topic is always present and cannot be a coalition member")
    return CoalitionGame(q, cfg, topic, ARGUMENT).value(coalition)


def coalition_value_edges(q: QBAF, cfg: SolverConfig, topic: str, coalition) -> float:
    """Topic strength when only the edges in ``coalition`` are kept."""
    return CoalitionGame(q, cfg, topic, EDGE).value(set(coalition))


def shapley_exact(q: QBAF, cfg: SolverConfig, topic: str, target: Target,
                  cap: int = DEFAULT_EXACT_CAP) -> float:
    """Exact Shapley attribution by enumerating every coalition of the other players."""
    game = CoalitionGame(q, cfg, topic, _kind_of(target))
    j = game.player_index(target)
    return game.shapley_from_table(game.value_table(cap), j)


def shapley_sampled(q: QBAF, cfg: SolverConfig, topic: str, target: Target,
                    samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> float:
    """Permutation-sampling estimate of the Shapley attribution."""
    game = CoalitionGame(q, cfg, topic, _kind_of(target))
    return game.sampled(game.player_index(target), samples, seed)


# Reports

@dataclass(frozen=True)
class AttributionReport:
    topic: str
    method: str
    kind: str
    entries: tuple  # ((target, value), ...) sorted by value desc, then target
    sample_size: int | None = None
    seed: int | None = None

    def __post_init__(self):
        ordered = tuple(sorted(self.entries, key=lambda tv: (-tv[1], target_sort_key(tv[0]))))
        object.__setattr__(self, "entries", ordered)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def targets(self) -> list:
        return [t for t, _ in self.entries]

    def as_dict(self) -> dict[str, float]:
        return {target_label(t): v for t, v in self.entries}

    def value(self, target: Target) -> float:
        for t, v in self.entries:
            if t == target or target_label(t) == target:
                return v
        raise KeyError(target)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["target", "value", "method", "topic", "samples", "seed"])
        samples = "" if self.sample_size is None else self.sample_size
        seed = "" if self.seed is None else self.seed
        for t, v in self.entries:
            w.writerow([target_label(t), f"{v:.9f}", self.method, self.topic, samples, seed])
        return buf.getvalue()


def parse_attribution_csv(text: str, q: QBAF) -> AttributionReport:
    """Read a table written by :meth:`AttributionReport.to_csv`, resolving targets in ``q``."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["target", "value", "method", "topic", "samples", "seed"]:
        raise ParseError("header must be target,value,method,topic,samples,seed", line=1)
    entries, meta = [], None
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 6:
            raise ParseError(f"expected 6 fields, got {len(row)}", line=lineno)
        label, value, method, topic, samples, seed = row
        key = (method, topic, samples, seed)
        if meta is None:
            meta = key
        elif key != meta:
            raise ParseError("method/topic/samples/seed differ between rows", line=lineno)
        try:
            v = float(value)
        except ValueError:
            raise ParseError(f"bad value {value!r}", line=lineno, field="value") from None
        if label.startswith("(") and label.endswith(")"):
            src, _, dst = label[1:-1].partition(",")
            entries.append((q.find_edge(src, dst), v))
        else:
            q.require_argument(label)
            entries.append((label, v))
    if meta is None:
        raise ParseError("attribution table has no rows", line=2)
    method, topic, samples, seed = meta
    kinds = {_kind_of(t) for t, _ in entries}
    if len(kinds) != 1:
        raise ParseError("table mixes argument and edge targets")
    return AttributionReport(
        topic=topic,
        method=normalize_method(method),
        kind=kinds.pop(),
        entries=tuple(entries),
        sample_size=int(samples) if samples else None,
        seed=int(seed) if seed else None,
    )


def worker_count() -> int:
    """Worker cap from ``QBAFX_THREADS`` (unset or 0 means one per CPU)."""
    raw = os.environ.get("QBAFX_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"QBAFX_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("QBAFX_THREADS must be non-negative")
    return n or (os.cpu_count() or 1)


def explain_all(q: QBAF, cfg: SolverConfig, topic: str, kind: str = ARGUMENT,
                method: str = REMOVAL, samples: int | None = None, seed: int | None = None,
                cap: int = DEFAULT_EXACT_CAP, workers: int | None = None) -> AttributionReport:
    """Attribution value for every eligible target, sorted into a report."""
    q.require_argument(topic)
    kind = normalize_kind(kind)
    method = normalize_method(method)
    targets: list[Target] = (
        [a for a in q.arguments if a != topic] if kind == ARGUMENT else list(q.edges)
    )
    workers = worker_count() if workers is None else max(1, workers)

    if method == REMOVAL:
        full = _solve_topic(topic_component(q, topic), cfg, topic, "full framework")
        fn = removal_aae if kind == ARGUMENT else removal_rae

        def one(t):
            return fn(q, cfg, topic, t, _full=full)
        samples = seed = None
    elif method == SHAPLEY_EXACT:
        game = CoalitionGame(q, cfg, topic, kind)
        table = game.value_table(cap)

        def one(t):
            return game.shapley_from_table(table, game.player_index(t))
        samples = seed = None
    else:
        samples = DEFAULT_SAMPLES if samples is None else int(samples)
        seed = DEFAULT_SEED if seed is None else int(seed)
        if samples < 1:
            raise ValueError("samples must be at least 1")
        game = CoalitionGame(q, cfg, topic, kind)

        def one(t):
            return game.sampled(game.player_index(t), samples, seed)

    def labelled(t):
        try:
            return one(t)
        except NonConvergence as exc:
            raise exc.with_context(f"target {target_label(t)}") from None

    if workers > 1 and len(targets) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(labelled, targets))
    else:
        values = [labelled(t) for t in targets]

    return AttributionReport(
        topic=topic,
        method=method,
        kind=kind,
        entries=tuple(zip(targets, values)),
        sample_size=samples,
        seed=seed,
    )
