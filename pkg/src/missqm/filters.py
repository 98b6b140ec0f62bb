"""Metric threshold predicates and the comma-joined filter mini-syntax."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import UnknownMetricError
from .matrices import PAIRWISE_METRICS

Q_AM = "q_am"

ALL_METRICS = (Q_AM,) + PAIRWISE_METRICS

_OPS = {
    "<": lambda v, t: v < t,
    "<=": lambda v, t: v <= t,
    ">": lambda v, t: v > t,
    ">=": lambda v, t: v >= t,
}

_FILTER_RE = re.compile(r"^\s*(\w+)\s*(<=|>=|<|>)\s*([-+0-9.eE]+)\s*$")


@dataclass(frozen=True)
class MetricPredicate:
    metric: str
    op: str
    threshold: float

    def __post_init__(self):
        if self.metric not in ALL_METRICS:
            raise UnknownMetricError(f"unknown metric {self.metric!r}")
        if self.op not in _OPS:
            raise ValueError(f"unknown operator {self.op!r}")
        if not math.isfinite(self.threshold):
            raise ValueError("threshold must be finite")

    def matches(self, value: float) -> bool:
        return not math.isnan(value) and _OPS[self.op](value, self.threshold)

    def __str__(self) -> str:
        return f"{self.metric}{self.op}{self.threshold:g}"


def parse_filter(text: str) -> list[MetricPredicate]:
    """Parse conjunctive filters like ``"jm_dir<0.05,cm_did>0.9"``."""
    predicates = []
    for part in text.split(","):
        if not part.strip():
            continue
        m = _FILTER_RE.match(part)
        if m is None:
            raise ValueError(f"cannot parse filter clause {part!r}")
        metric, op, raw = m.groups()
        predicates.append(MetricPredicate(metric, op, float(raw)))
    return predicates
