"""Quadratic Energy gradual semantics.

Strengths start at the base scores and are updated synchronously: every
argument's energy (supporters' strength minus attackers' strength) is computed
from the current iterate, then the quadratic update is applied to all
arguments at once.  Iteration stops when the sup-norm change between two
iterates drops to the tolerance.

The numeric core (:class:`CompiledQBAF`) solves many edge-masked variants of
one framework in a single vectorised loop.  Energies are accumulated with
``np.bincount`` in canonical edge order, and a masked-out edge contributes an
exact ``±0.0``, so a masked solve is bit-identical to solving the physically
restricted framework.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import NonConvergence, UnknownArgument
from .framework import QBAF, Polarity

DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_ITERATIONS = 10_000


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be a positive integer, got {self.max_iterations}")


@dataclass(frozen=True)
class SolveOutcome:
    strengths: dict[str, float]
    iterations_used: int
    converged: bool = True
    last_delta: float = 0.0

    def __getitem__(self, arg):
        return self.strengths[arg]


def energy(q: QBAF, s: Mapping[str, float], alpha: str) -> float:
    """Sum of supporters' strengths minus sum of attackers' strengths."""
    q.require_argument(alpha)
    total = 0.0
    for e in q.edges:
        if e.target != alpha:
            continue
        if e.source not in s:
            raise UnknownArgument(f"strength map lacks {e.source!r}")
        total += s[e.source] if e.polarity is Polarity.SUPPORT else -s[e.source]
    return total


def qe_update(tau_alpha: float, e: float) -> float:
    """Quadratic Energy update of one argument with base score ``tau_alpha`` and energy ``e``."""
    h = e * e / (1.0 + e * e)
    if e <= 0:
        return tau_alpha - tau_alpha * h
    return tau_alpha + (1.0 - tau_alpha) * h


def _qe_update_array(tau, e):
    h = e * e / (1.0 + e * e)
    return np.where(e <= 0, tau - tau * h, tau + (1.0 - tau) * h)


def _rows(mask):
    mask = np.asarray(mask, dtype=bool)
    return mask[None, :] if mask.ndim == 1 else mask


class CompiledQBAF:
    """Index arrays for one framework, reused across many restricted solves."""

    def __init__(self, q: QBAF):
        self.qbaf = q
        self.n = len(q.arguments)
        self.m = len(q.edges)
        idx = q.index()
        self.index = idx
        self.tau = np.array(q.scores, dtype=float)
        self.src = np.array([idx[e.source] for e in q.edges], dtype=np.intp)
        self.dst = np.array([idx[e.target] for e in q.edges], dtype=np.intp)
        self.sign = np.array(
            [1.0 if e.polarity is Polarity.SUPPORT else -1.0 for e in q.edges], dtype=float
        )

    def edge_mask_for_arguments(self, present):
        """Edge masks of the sub-frameworks induced by boolean argument masks ``present`` (b, n)."""
        present = np.asarray(present, dtype=bool)
        return present[:, self.src] & present[:, self.dst]

    def solve(self, cfg: SolverConfig, edge_mask=None):
        """Solve every masked variant.

        Returns ``(strengths (b, n), iterations (b,), final_delta (b,))``.

        ``edge_mask`` is a boolean array (b, m); ``None`` means the full framework.
        Each variant stops at its own convergence iteration, exactly as a
        standalone solve would.  Raises :class:`NonConvergence` for the first
        variant (lowest row) still moving at the cap; ``exc.row`` names it.
        """
        if edge_mask is None:
            edge_mask = np.ones((1, self.m), dtype=bool)
        edge_mask = _rows(edge_mask)
        b, n = edge_mask.shape[0], self.n
        coef = np.where(edge_mask, self.sign, 0.0)
        strengths = np.tile(self.tau, (b, 1))
        iterations = np.zeros(b, dtype=np.int64)
        final_delta = np.zeros(b)
        if n == 0:
            iterations[:] = 1
            return strengths, iterations, final_delta
        active = np.arange(b)
        offsets = np.arange(b)[:, None] * n
        for it in range(1, cfg.max_iterations + 1):
            k = active.size
            cur = strengths[active]
            weights = cur[:, self.src] * coef[active]
            bins = (offsets[:k] + self.dst).ravel()
            e = np.bincount(bins, weights.ravel(), minlength=k * n).reshape(k, n)
            new = _qe_update_array(self.tau, e)
            delta = np.max(np.abs(new - cur), axis=1)
            strengths[active] = new
            done = delta <= cfg.tolerance
            iterations[active[done]] = it
            final_delta[active[done]] = delta[done]
            if done.all():
                return strengths, iterations, final_delta
            if it == cfg.max_iterations:
                bad = int(np.argmax(~done))
                row = int(active[bad])
                exc = NonConvergence(
                    cfg.tolerance,
                    cfg.max_iterations,
                    float(delta[bad]),
                    dict(zip(self.qbaf.arguments, strengths[row].tolist())),
                )
                exc.row = row
                raise exc
            active = active[~done]
        raise AssertionError("unreachable")

    def topic_values(self, topic: int, cfg: SolverConfig, edge_mask, chunk: int = 8192):
        """Strength of argument index ``topic`` under each edge mask, solved in chunks."""
        edge_mask = _rows(edge_mask)
        out = np.empty(edge_mask.shape[0])
        for start in range(0, edge_mask.shape[0], chunk):
            block = edge_mask[start:start + chunk]
            try:
                strengths, _, _ = self.solve(cfg, block)
            except NonConvergence as exc:
                exc.row = start + exc.row
                raise
            out[start:start + chunk] = strengths[:, topic]
        return out


def solve_qe(q: QBAF, cfg: SolverConfig | None = None) -> SolveOutcome:
    """Run the synchronous QE iteration on ``q`` until the sup-norm change is within tolerance."""
    cfg = cfg or SolverConfig()
    compiled = CompiledQBAF(q)
    strengths, iterations, delta = compiled.solve(cfg)
    return SolveOutcome(
        strengths=dict(zip(q.arguments, strengths[0].tolist())),
        iterations_used=int(iterations[0]),
        last_delta=float(delta[0]),
    )


def strengths_csv(outcome: SolveOutcome, order) -> str:
    lines = ["argument,strength"]
    for a in order:
        lines.append(f"{a},{outcome.strengths[a]:.9f}")
    return "\n".join(lines) + "\n"
