"""Graph-tool-friendly node/edge tables and long-form matrix files.

Exports carry raw metric values only; visual mappings (node size, edge
width, colour ramps) are left to the consuming tool. Edge rows use variable
names as source/target so node attributes join on the ``id`` column.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .dataset import IncompleteDataset
from .errors import UnknownMetricError
from .filters import MetricPredicate
from .matrices import CM_DID, CM_H, JM_ABS, JM_DIR, JM_MAG, PAIRWISE_METRICS, PairwiseQMMatrix
from .univariate import profile

EDGE_COLUMNS = [
    "source", "target",
    "jm_mag", "jm_dir", "jm_abs", "jm_support",
    "cm_did_fwd", "cm_did_rev", "cm_h_fwd", "cm_h_rev",
    "cm_support_fwd", "cm_support_rev",
]

NODE_COLUMNS = ["id", "label", "q_am", "missing_count"]


@dataclass(frozen=True)
class NetworkExport:
    nodes: tuple[dict, ...]
    edges: tuple[dict, ...]
    applied_filters: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "nodes": [dict(n) for n in self.nodes],
            "edges": [dict(e) for e in self.edges],
            "applied_filters": list(self.applied_filters),
        }


def _matrix_map(matrices) -> dict[str, PairwiseQMMatrix]:
    return {m.metric: m for m in matrices}


def export_network(
    d: IncompleteDataset,
    matrices,
    filters: list[MetricPredicate] | None = None,
) -> NetworkExport:
    """One node per variable and one edge per unordered pair surviving
    every filter predicate.

    All five pairwise metrics must be present in ``matrices``. Filters
    evaluate an edge's directional metrics on the per-pair max of the two
    directions; the emitted edge still carries both orientations
    (``*_fwd`` conditions missingness in source on target, ``*_rev`` the
    reverse). Rows are ordered by variable index.
    """
    filters = filters or []
    by_metric = _matrix_map(matrices)
    missing_metrics = [m for m in PAIRWISE_METRICS if m not in by_metric]
    if missing_metrics:
        raise UnknownMetricError(
            f"network export needs all pairwise matrices; missing: {', '.join(missing_metrics)}"
        )
    for pred in filters:
        if pred.metric not in by_metric:
            raise UnknownMetricError(f"filter metric {pred.metric!r} has not been computed")

    prof = profile(d)
    nodes = tuple(
        {"id": e.variable, "label": e.variable, "q_am": e.q_am, "missing_count": e.missing_count}
        for e in prof.entries
    )

    pair_views = {mid: m.pair_values() for mid, m in by_metric.items()}
    jm_mag, jm_dir, jm_abs = by_metric[JM_MAG], by_metric[JM_DIR], by_metric[JM_ABS]
    cm_did, cm_h = by_metric[CM_DID], by_metric[CM_H]

    names = d.variable_names
    edges = []
    for j in range(d.variable_count):
        for k in range(j + 1, d.variable_count):
            if not all(p.matches(pair_views[p.metric][j, k]) for p in filters):
                continue
            edges.append({
                "source": names[j],
                "target": names[k],
                "jm_mag": float(jm_mag.values[j, k]),
                "jm_dir": float(jm_dir.values[j, k]),
                "jm_abs": float(jm_abs.values[j, k]),
                "jm_support": int(jm_mag.support[j, k]),
                "cm_did_fwd": float(cm_did.values[j, k]),
                "cm_did_rev": float(cm_did.values[k, j]),
                "cm_h_fwd": float(cm_h.values[j, k]),
                "cm_h_rev": float(cm_h.values[k, j]),
                "cm_support_fwd": int(cm_did.support[j, k]),
                "cm_support_rev": int(cm_did.support[k, j]),
            })

    return NetworkExport(
        nodes=nodes, edges=tuple(edges),
        applied_filters=tuple(str(p) for p in filters),
    )


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.9f}"
    return str(value)


def write_network_csv(network: NetworkExport, directory: str | os.PathLike) -> tuple[str, str]:
    """Write nodes.csv and edges.csv into ``directory``; returns the paths."""
    os.makedirs(directory, exist_ok=True)
    nodes_path = os.path.join(directory, "nodes.csv")
    edges_path = os.path.join(directory, "edges.csv")

    with open(nodes_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(NODE_COLUMNS)
        for node in network.nodes:
            writer.writerow([_fmt(node[c]) for c in NODE_COLUMNS])

    with open(edges_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(EDGE_COLUMNS)
        for edge in network.edges:
            writer.writerow([_fmt(edge[c]) for c in EDGE_COLUMNS])

    return nodes_path, edges_path


def matrix_rows(matrix: PairwiseQMMatrix):
    """Long-form rows (source, target, metric, value, support).

    Symmetric matrices emit each unordered pair once (j < k); directional
    matrices emit every ordered pair. Diagonals are never emitted.
    """
    k = matrix.variable_count
    names = matrix.variables
    for j in range(k):
        targets = range(j + 1, k) if matrix.symmetric else range(k)
        for l in targets:
            if j == l:
                continue
            yield (names[j], names[l], matrix.metric,
                   float(matrix.values[j, l]), int(matrix.support[j, l]))


def write_matrix_csv(matrix: PairwiseQMMatrix, fh_or_path) -> None:
    """Write a matrix in long form with nine-decimal fixed-point values."""
    own = isinstance(fh_or_path, (str, os.PathLike))
    fh = open(fh_or_path, "w", newline="", encoding="utf-8") if own else fh_or_path
    try:
        writer = csv.writer(fh)
        writer.writerow(["source", "target", "metric", "value", "support"])
        for source, target, metric, value, support in matrix_rows(matrix):
            writer.writerow([source, target, metric, f"{value:.9f}", support])
    finally:
        if own:
            fh.close()


def read_matrix_csv(path: str | os.PathLike) -> PairwiseQMMatrix:
    """Rebuild a matrix from its long-form CSV export.

    Variable order follows first appearance. Symmetric exports are
    mirrored back to full matrices; diagonals (never exported) come back
    as NaN.
    """
    with open(path, "r", newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["source", "target", "metric", "value", "support"]:
        raise ValueError(f"{path} is not a long-form matrix export")

    body = rows[1:]
    if not body:
        raise ValueError("matrix export holds no data rows")
    metric = body[0][2]
    names: list[str] = []
    for source, target, *_ in body:
        for n in (source, target):
            if n not in names:
                names.append(n)

    k = len(names)
    idx = {n: i for i, n in enumerate(names)}
    values = np.full((k, k), np.nan)
    support = np.zeros((k, k), dtype=np.int64)
    seen_pairs = set()
    for source, target, m, value, sup in body:
        if m != metric:
            raise ValueError("matrix export mixes metrics")
        j, l = idx[source], idx[target]
        values[j, l] = float(value)
        support[j, l] = int(sup)
        seen_pairs.add((j, l))

    symmetric = not any((l, j) in seen_pairs for j, l in seen_pairs if j != l)
    if symmetric:
        for j, l in list(seen_pairs):
            values[l, j] = values[j, l]
            support[l, j] = support[j, l]

    return PairwiseQMMatrix(metric, tuple(names), values, support, symmetric=symmetric)


def compute_all_matrices(d: IncompleteDataset) -> dict[str, PairwiseQMMatrix]:
    """All five pairwise matrices keyed by metric id."""
    from .conditional import cm_matrices
    from .joint import jm_matrices

    mag, direction, absolute = jm_matrices(d)
    did, ent = cm_matrices(d)
    return {m.metric: m for m in (mag, direction, absolute, did, ent)}
