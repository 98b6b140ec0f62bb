"""Metric-driven variable orderings and threshold-based variable selection.

The pairwise ordering is the greedy chain construction of Artero et al.:
the strongest pair seeds the sequence and the remaining variables attach,
one at a time, to whichever end they relate to most strongly. All ties
break by variable index (and by the left end), so orderings are fully
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import TooFewVariablesError, UnknownMetricError
from .filters import Q_AM, MetricPredicate
from .matrices import PairwiseQMMatrix
from .univariate import MissingnessProfile


@dataclass(frozen=True)
class VariableOrdering:
    metric: str
    permutation: tuple[int, ...]
    anchor_pair: tuple[int, int] | None

    def __post_init__(self):
        k = len(self.permutation)
        if sorted(self.permutation) != list(range(k)):
            raise ValueError("ordering is not a permutation")
        if self.anchor_pair is not None:
            positions = {v: i for i, v in enumerate(self.permutation)}
            a, b = self.anchor_pair
            if abs(positions[a] - positions[b]) != 1:
                raise ValueError("anchor pair is not adjacent")

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "permutation": list(self.permutation),
            "anchor_pair": None if self.anchor_pair is None else list(self.anchor_pair),
        }


def order_by_univariate(p: MissingnessProfile, descending: bool = True) -> VariableOrdering:
    """Variables sorted by amount missing; ties keep dataset order."""
    q = p.q_am
    perm = sorted(range(len(q)), key=lambda j: (-q[j] if descending else q[j], j))
    anchor = (perm[0], perm[1]) if len(perm) >= 2 else None
    return VariableOrdering(metric=Q_AM, permutation=tuple(perm), anchor_pair=anchor)


def order_by_pairwise(matrix: PairwiseQMMatrix, aggregation: str = "max") -> VariableOrdering:
    """Greedy chain ordering by a pairwise metric.

    Directional metrics are collapsed per pair first (max by default). The
    global maximum pair seeds the chain; each remaining variable is placed
    next to whichever outermost variable it scores highest against. Ties
    prefer the lower variable index, then the left end.
    """
    k = matrix.variable_count
    if k < 2:
        raise TooFewVariablesError("pairwise ordering needs at least two variables")
    values = matrix.pair_values(aggregation)

    seed = (0, 1)
    best = -np.inf
    for j in range(k):
        for l in range(j + 1, k):
            v = values[j, l]
            if not np.isnan(v) and v > best:
                best, seed = v, (j, l)

    chain = deque(seed)
    placed = set(seed)
    while len(placed) < k:
        pick, pick_left, pick_value = None, True, -np.inf
        for c in range(k):
            if c in placed:
                continue
            for left in (True, False):
                end = chain[0] if left else chain[-1]
                v = values[c, end]
                if not np.isnan(v) and v > pick_value:
                    pick, pick_left, pick_value = c, left, v
        if pick is None:
            # no finite score against either end: fall back to index order
            pick, pick_left = min(c for c in range(k) if c not in placed), True
        if pick_left:
            chain.appendleft(pick)
        else:
            chain.append(pick)
        placed.add(pick)

    return VariableOrdering(metric=matrix.metric, permutation=tuple(chain), anchor_pair=seed)


def _pair_iter(values: np.ndarray):
    k = values.shape[0]
    for j in range(k):
        for l in range(j + 1, k):
            yield j, l, values[j, l]


def threshold_select(
    source: MissingnessProfile | PairwiseQMMatrix | list[PairwiseQMMatrix],
    predicates: MetricPredicate | list[MetricPredicate] | None = None,
    top_n: int | None = None,
    rank_metric: str | None = None,
) -> list[int]:
    """Variables satisfying metric predicates, strongest first.

    With a profile source the predicates must target q_am and select
    variables directly. With matrix sources a variable qualifies when it is
    incident to at least one pair satisfying every predicate (directional
    metrics use the max over the two directions). Without predicates all
    variables qualify. Results are sorted descending by ``rank_metric``
    value (default: the first predicate's metric, else the first matrix's;
    for pairs the variable's best qualifying pair counts), ties by index;
    ``top_n`` truncates the sorted list.
    """
    if predicates is None:
        predicates = []
    elif isinstance(predicates, MetricPredicate):
        predicates = [predicates]

    if isinstance(source, MissingnessProfile):
        for p in predicates:
            if p.metric != Q_AM:
                raise UnknownMetricError(
                    f"metric {p.metric!r} is not available on a univariate profile"
                )
        if rank_metric not in (None, Q_AM):
            raise UnknownMetricError(
                f"metric {rank_metric!r} is not available on a univariate profile"
            )
        q = source.q_am
        chosen = [j for j in range(len(q)) if all(p.matches(q[j]) for p in predicates)]
        chosen.sort(key=lambda j: (-q[j], j))
        return chosen[:top_n] if top_n is not None else chosen

    matrices = [source] if isinstance(source, PairwiseQMMatrix) else list(source)
    if not matrices:
        raise ValueError("no matrices given")
    by_metric = {m.metric: m for m in matrices}
    if rank_metric is None:
        rank_metric = predicates[0].metric if predicates else matrices[0].metric
    for metric in [p.metric for p in predicates] + [rank_metric]:
        if metric not in by_metric:
            raise UnknownMetricError(f"metric {metric!r} has not been computed")

    pair_views = {mid: m.pair_values() for mid, m in by_metric.items()}
    best_value: dict[int, float] = {}
    for j, l, _ in _pair_iter(pair_views[rank_metric]):
        ok = all(p.matches(pair_views[p.metric][j, l]) for p in predicates)
        if not ok:
            continue
        v = pair_views[rank_metric][j, l]
        for var in (j, l):
            if var not in best_value or v > best_value[var]:
                best_value[var] = v

    chosen = sorted(best_value, key=lambda var: (-best_value[var], var))
    return chosen[:top_n] if top_n is not None else chosen
