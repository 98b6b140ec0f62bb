"""Conditional-missingness metrics built on shared-bin histograms.

Whether missingness in variable j depends on the recorded values of
variable k is judged by comparing two discrete distributions over the same
bins: the distribution of all recorded values of k, and the distribution of
k's values restricted to items that are missing in j. The density-difference
metric is the total variation distance between the two; the entropy metric
is the normalized difference of their Shannon entropies.

Numerical variables are binned into equal-width bins whose count is chosen
by the Shimazaki-Shinomoto cost criterion (Neural Computation 19(6), 2007);
categorical variables get one bin per label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import CATEGORICAL, NUMERICAL, IncompleteDataset, VariableColumn
from .errors import NoRecordedValuesError, TooFewVariablesError
from .matrices import CM_DID, CM_H, PairwiseQMMatrix

#: Largest bin count ever evaluated; beyond desk scale extra bins only add cost.
MAX_BIN_CANDIDATES = 50

# scatter layout for evaluating every candidate bin count in one pass:
# row b-1 of the boundary matrix holds [0, cut_1 .. cut_{b-1}, n, n, ...],
# so row-wise diffs yield the b bin counts followed by zero padding
_SCAN_LAYOUTS: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _scan_layout(max_b: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    layout = _SCAN_LAYOUTS.get(max_b)
    if layout is None:
        rows = np.repeat(np.arange(1, max_b), np.arange(1, max_b))
        if max_b > 1:
            cols = np.concatenate([np.arange(1, b) for b in range(2, max_b + 1)])
        else:
            cols = np.empty(0, dtype=np.intp)
        layout = (rows, cols, cols.astype(float))
        _SCAN_LAYOUTS[max_b] = layout
    return layout


def optimal_bin_count(values) -> int:
    """Bin count minimizing the Shimazaki-Shinomoto cost over 1..min(50, n).

    For each candidate b the range min..max is split into b equal-width
    bins and the cost (2*mean - variance) / width^2 of the bin counts is
    evaluated (variance biased, i.e. divided by b). Candidates are compared
    through the exact integer form b * (2n - sum(counts^2)), which orders
    identically (the cost is that value scaled by 1/range^2 and shifted by
    n^2), so ties resolve to the smallest count without float noise.
    A zero-range sample gets a single bin.
    """
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise NoRecordedValuesError("cannot choose a bin count for an empty sample")
    if not np.isfinite(v).all():
        raise ValueError("bin count selection requires finite values")

    lo, hi = float(v.min()), float(v.max())
    if lo == hi:
        return 1

    n = v.size
    v_sorted = np.sort(v)
    max_b = min(MAX_BIN_CANDIDATES, n)
    rows, cols, cols_f = _scan_layout(max_b)

    bounds = np.full((max_b, max_b + 2), float(n))
    bounds[:, 0] = 0.0
    if cols.size:
        # interior edge i of candidate b is i * ((hi - lo) / b) + lo, the
        # same arithmetic np.linspace uses, so membership matches
        # np.histogram exactly; boundary values go right (searchsorted left)
        edges = cols_f * ((hi - lo) / (rows + 1)) + lo
        bounds[rows, cols] = np.searchsorted(v_sorted, edges, side="left")
    counts = np.diff(bounds, axis=1).astype(np.int64)

    b_range = np.arange(1, max_b + 1, dtype=np.int64)
    criterion = b_range * (2 * n - (counts * counts).sum(axis=1))
    return int(np.argmin(criterion)) + 1


@dataclass(frozen=True)
class BinnedDistribution:
    """Histogram of a variable's recorded values and its probability vector.

    Numerical distributions carry b+1 ascending edges (equal width over the
    recorded min..max, last bin closed on the right); categorical ones carry
    the label-sorted categories, one bin each. ``probabilities`` is all zero
    when the distribution was built over an empty subset.
    """

    variable: str
    kind: str
    bin_count: int
    counts: np.ndarray
    probabilities: np.ndarray
    edges: np.ndarray | None = None
    categories: tuple[str, ...] | None = None

    def __post_init__(self):
        self.counts.setflags(write=False)
        self.probabilities.setflags(write=False)
        if self.edges is not None:
            self.edges.setflags(write=False)

    @property
    def total_count(self) -> int:
        return int(self.counts.sum())

    def to_dict(self) -> dict:
        return {
            "variable": self.variable,
            "kind": self.kind,
            "bin_count": self.bin_count,
            "counts": self.counts.tolist(),
            "probabilities": self.probabilities.tolist(),
            "edges": None if self.edges is None else self.edges.tolist(),
            "categories": None if self.categories is None else list(self.categories),
        }


def _probabilities(counts: np.ndarray) -> np.ndarray:
    total = counts.sum()
    if total == 0:
        return np.zeros(len(counts))
    return counts / total


def _category_index(categories: tuple[str, ...]) -> dict[str, int]:
    return {c: i for i, c in enumerate(categories)}


def bin_distribution(d: IncompleteDataset, k: int | str) -> BinnedDistribution:
    """Distribution of all recorded values of variable k.

    Numerical bin counts come from optimal_bin_count, except that a column
    with at most two distinct recorded values keeps one bin per value
    (the cost criterion assumes a continuous density and degenerates on
    two-point data such as binary class labels).
    """
    col = d[d.resolve(k)]
    rec = col.recorded_values()
    if rec.size == 0:
        raise NoRecordedValuesError(f"variable {col.name!r} has no recorded values")

    if col.kind == NUMERICAL:
        distinct = np.unique(rec)
        b = distinct.size if distinct.size <= 2 else optimal_bin_count(rec)
        edges = np.linspace(float(rec.min()), float(rec.max()), b + 1)
        counts, _ = np.histogram(rec, bins=edges)
        counts = counts.astype(np.int64)
        return BinnedDistribution(
            variable=col.name, kind=NUMERICAL, bin_count=b,
            counts=counts, probabilities=_probabilities(counts), edges=edges,
        )

    categories = tuple(sorted({str(v) for v in rec}))
    index = _category_index(categories)
    counts = np.zeros(len(categories), dtype=np.int64)
    for v in rec:
        counts[index[str(v)]] += 1
    return BinnedDistribution(
        variable=col.name, kind=CATEGORICAL, bin_count=len(categories),
        counts=counts, probabilities=_probabilities(counts), categories=categories,
    )


def assign_bins(dist: BinnedDistribution, column: VariableColumn) -> np.ndarray:
    """Bin index of every item in the column (missing items get -1).

    Matches np.histogram membership exactly: boundary values go right,
    the maximum lands in the last bin.
    """
    idx = np.full(column.item_count, -1, dtype=np.int64)
    rec = ~column.missing
    if dist.kind == NUMERICAL:
        values = column.values[rec].astype(float)
        pos = np.searchsorted(dist.edges, values, side="right") - 1
        pos[values == dist.edges[-1]] = dist.bin_count - 1
        idx[rec] = pos
    else:
        index = _category_index(dist.categories)
        idx[rec] = [index[str(v)] for v in column.values[rec]]
    return idx


def subset_distribution(dist: BinnedDistribution, bin_indices: np.ndarray,
                        select: np.ndarray) -> BinnedDistribution:
    """Distribution of a subset of items over the same bins as ``dist``."""
    counts = np.bincount(bin_indices[select], minlength=dist.bin_count).astype(np.int64)
    return BinnedDistribution(
        variable=dist.variable, kind=dist.kind, bin_count=dist.bin_count,
        counts=counts, probabilities=_probabilities(counts),
        edges=dist.edges, categories=dist.categories,
    )


def shannon_entropy(probabilities: np.ndarray) -> float:
    """Shannon entropy in nats; zero bins contribute nothing."""
    p = probabilities[probabilities > 0]
    return float(-(p * np.log(p)).sum())


def _density_difference(overall: BinnedDistribution, conditioned: BinnedDistribution) -> float:
    return float(0.5 * np.abs(overall.probabilities - conditioned.probabilities).sum())


def _entropy_difference(overall: BinnedDistribution, conditioned: BinnedDistribution) -> float:
    if overall.bin_count == 1:
        return 0.0
    h_all = shannon_entropy(overall.probabilities)
    h_cond = shannon_entropy(conditioned.probabilities)
    return abs(h_all - h_cond) / math.log(overall.bin_count)


def _conditioned(d: IncompleteDataset, j: int, k: int):
    """Overall distribution of k, conditioned distribution, and support."""
    col_k = d[k]
    overall = bin_distribution(d, k)
    select = ~col_k.missing & d[j].missing
    support = int(select.sum())
    idx = assign_bins(overall, col_k)
    conditioned = subset_distribution(overall, idx, select)
    return overall, conditioned, support


def cm_density_difference(d: IncompleteDataset, j: int | str, k: int | str) -> float:
    """Total variation distance between k's overall recorded-value
    distribution and its distribution over items missing in j, in [0, 1].

    Zero support (no item is missing in j while recorded in k) yields 0:
    there is no evidence of conditional missingness.
    """
    j, k = d.resolve(j), d.resolve(k)
    overall, conditioned, support = _conditioned(d, j, k)
    if support == 0:
        return 0.0
    return _density_difference(overall, conditioned)


def cm_entropy(d: IncompleteDataset, j: int | str, k: int | str) -> float:
    """Normalized Shannon-entropy difference between the two distributions.

    The difference is divided by log(b), the maximum entropy over b bins,
    giving values in [0, 1]. Single-bin variables and zero support yield 0.
    """
    j, k = d.resolve(j), d.resolve(k)
    overall, conditioned, support = _conditioned(d, j, k)
    if support == 0:
        return 0.0
    return _entropy_difference(overall, conditioned)


def cm_matrices(d: IncompleteDataset) -> tuple[PairwiseQMMatrix, PairwiseQMMatrix]:
    """Both conditional-missingness matrices over all ordered pairs.

    Entry (j, k) conditions missingness in j on the recorded values of k;
    support(j, k) counts items missing in j but recorded in k. Pairs with
    zero support (including fully missing condition variables) get value 0,
    keeping the matrices total. Diagonals are NaN. Use
    ``PairwiseQMMatrix.pair_values`` to collapse the two directions of a
    pair into one value (max by default, min/avg available).
    """
    if d.variable_count < 2:
        raise TooFewVariablesError("conditional missingness needs at least two variables")

    k_count = d.variable_count
    did = np.zeros((k_count, k_count))
    ent = np.zeros((k_count, k_count))
    support = np.zeros((k_count, k_count), dtype=np.int64)
    np.fill_diagonal(did, np.nan)
    np.fill_diagonal(ent, np.nan)

    for k in range(k_count):
        col_k = d[k]
        rec_k = ~col_k.missing
        if not rec_k.any():
            continue
        overall = bin_distribution(d, k)
        idx = assign_bins(overall, col_k)
        h_all = shannon_entropy(overall.probabilities)
        log_b = math.log(overall.bin_count) if overall.bin_count > 1 else 0.0
        for j in range(k_count):
            if j == k:
                continue
            select = rec_k & d[j].missing
            s = int(select.sum())
            support[j, k] = s
            if s == 0:
                continue
            counts = np.bincount(idx[select], minlength=overall.bin_count)
            cond_p = counts / s
            did[j, k] = float(0.5 * np.abs(overall.probabilities - cond_p).sum())
            if log_b > 0.0:
                ent[j, k] = abs(h_all - shannon_entropy(cond_p)) / log_b

    names = d.variable_names
    return (
        PairwiseQMMatrix(CM_DID, names, did, support, symmetric=False),
        PairwiseQMMatrix(CM_H, names, ent, support.copy(), symmetric=False),
    )


@dataclass(frozen=True)
class ConditionalProfile:
    """Everything needed to judge how variable k relates to missingness in
    the selected variable j: shared-bin distributions, support, joint
    missing count and both conditional metrics.

    ``overall``/``conditioned`` are None only when k has no recorded values
    at all; zero support with recorded values yields an all-zero
    conditioned distribution instead.
    """

    target: str
    condition: str
    overall: BinnedDistribution | None
    conditioned: BinnedDistribution | None
    support: int
    joint_missing_count: int
    q_cm_did: float
    q_cm_h: float

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "condition": self.condition,
            "overall": None if self.overall is None else self.overall.to_dict(),
            "conditioned": None if self.conditioned is None else self.conditioned.to_dict(),
            "support": self.support,
            "joint_missing_count": self.joint_missing_count,
            "q_cm_did": self.q_cm_did,
            "q_cm_h": self.q_cm_h,
        }


def conditional_profile(d: IncompleteDataset, j: int | str) -> list[ConditionalProfile]:
    """Conditional profiles of the selected variable j against every other
    variable, in dataset order (K-1 entries)."""
    j = d.resolve(j)
    miss_j = d[j].missing
    profiles = []
    for k in range(d.variable_count):
        if k == j:
            continue
        col_k = d[k]
        joint = int((miss_j & col_k.missing).sum())
        rec_k = ~col_k.missing
        if not rec_k.any():
            profiles.append(ConditionalProfile(
                target=d[j].name, condition=col_k.name, overall=None,
                conditioned=None, support=0, joint_missing_count=joint,
                q_cm_did=0.0, q_cm_h=0.0,
            ))
            continue
        overall = bin_distribution(d, k)
        idx = assign_bins(overall, col_k)
        select = rec_k & miss_j
        support = int(select.sum())
        cond = subset_distribution(overall, idx, select)
        if support == 0:
            q_did, q_h = 0.0, 0.0
        else:
            q_did = _density_difference(overall, cond)
            q_h = _entropy_difference(overall, cond)
        profiles.append(ConditionalProfile(
            target=d[j].name, condition=col_k.name, overall=overall,
            conditioned=cond, support=support, joint_missing_count=joint,
            q_cm_did=q_did, q_cm_h=q_h,
        ))
    return profiles
