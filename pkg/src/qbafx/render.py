"""Graphviz DOT rendering of attribution reports.

Positive scores are drawn in blue, negative in red and negligible ones
(``|value| < threshold``) in grey.  Colour intensity is a 5-step ramp picked
from ``|value| / max |value|`` over the displayed (non-negligible) entries of
the report; edge reports additionally scale ``penwidth`` linearly from 1 to 5.
Attacks are solid, supports dashed, and the topic gets a double border.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .attribution import ARGUMENT, EDGE, AttributionReport, target_label
from .errors import TargetMismatch
from .framework import QBAF, Edge, Polarity

BLUES = ("#deebf7", "#9ecae1", "#6baed6", "#3182bd", "#08519c")
REDS = ("#fee0d2", "#fcbba1", "#fb6a4a", "#de2d26", "#a50f15")
GREY = "#bdbdbd"
NEUTRAL_EDGE = "#636363"


@dataclass(frozen=True)
class RenderSpec:
    negligible_threshold: float = 1e-3
    blues: tuple = BLUES
    reds: tuple = REDS
    grey: str = GREY

    def __post_init__(self):
        if not self.negligible_threshold >= 0:
            raise ValueError("negligible_threshold must be non-negative")
        if len(self.blues) != len(self.reds) or not self.blues:
            raise ValueError("colour ramps must be non-empty and of equal length")

    def color(self, value: float, scale: float) -> str:
        if abs(value) < self.negligible_threshold or scale <= 0:
            return self.grey
        ramp = self.blues if value > 0 else self.reds
        step = math.ceil(min(1.0, abs(value) / scale) * len(ramp)) - 1
        return ramp[max(0, step)]

    def penwidth(self, value: float, scale: float) -> float:
        if abs(value) < self.negligible_threshold or scale <= 0:
            return 1.0
        return 1.0 + 4.0 * min(1.0, abs(value) / scale)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _check(q: QBAF, report: AttributionReport) -> dict:
    if report.topic not in q.arguments:
        raise TargetMismatch(f"topic {report.topic!r} is not in the framework")
    values = {}
    for t, v in report.entries:
        if report.kind == EDGE:
            if not isinstance(t, Edge) or t not in q.edges:
                raise TargetMismatch(f"edge target {target_label(t)} is not in the framework")
        else:
            if isinstance(t, Edge) or t not in q.arguments or t == report.topic:
                raise TargetMismatch(f"argument target {target_label(t)} is not eligible")
        if t in values:
            raise TargetMismatch(f"target {target_label(t)} appears twice")
        values[t] = v
    expected = len(q.edges) if report.kind == EDGE else len(q.arguments) - 1
    if len(values) != expected:
        raise TargetMismatch(f"report covers {len(values)} targets, framework has {expected}")
    return values


def render_dot(q: QBAF, report: AttributionReport, spec: RenderSpec | None = None,
               name: str = "explanation") -> str:
    spec = spec or RenderSpec()
    values = _check(q, report)
    shown = [abs(v) for v in values.values() if abs(v) >= spec.negligible_threshold]
    scale = max(shown, default=0.0)

    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;",
             '  node [shape=ellipse, style=filled, fillcolor="#ffffff", fontname="Helvetica"];']
    lines.append(f"  // topic {report.topic}, method {report.method}, kind {report.kind}")
    for a in q.arguments:
        attrs = []
        if report.kind == ARGUMENT and a in values:
            v = values[a]
            attrs.append(f"fillcolor={_quote(spec.color(v, scale))}")
            attrs.append(f"tooltip={_quote(f'{v:.9f}')}")
        if a == report.topic:
            attrs.append("peripheries=2")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(a)}{suffix};")
    for e in q.edges:
        attrs = ["style=solid" if e.polarity is Polarity.ATTACK else "style=dashed"]
        if report.kind == EDGE:
            v = values[e]
            attrs.append(f"color={_quote(spec.color(v, scale))}")
            attrs.append(f"penwidth={spec.penwidth(v, scale):.3f}")
            attrs.append(f"tooltip={_quote(f'{v:.9f}')}")
        else:
            attrs.append(f"color={_quote(NEUTRAL_EDGE)}")
        lines.append(f"  {_quote(e.source)} -> {_quote(e.target)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
