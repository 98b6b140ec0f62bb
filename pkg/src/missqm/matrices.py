"""Shared K x K pairwise metric matrix container."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

JM_MAG = "jm_mag"
JM_DIR = "jm_dir"
JM_ABS = "jm_abs"
CM_DID = "cm_did"
CM_H = "cm_h"

PAIRWISE_METRICS = (JM_MAG, JM_DIR, JM_ABS, CM_DID, CM_H)
SYMMETRIC_METRICS = (JM_MAG, JM_DIR, JM_ABS)

PAIR_AGGREGATIONS = ("max", "min", "avg")


@dataclass(frozen=True)
class PairwiseQMMatrix:
    """One pairwise metric over all variable pairs.

    Symmetric metrics (the joint-missingness family) satisfy
    values[j, k] == values[k, j]. Conditional metrics are directional:
    entry (j, k) describes missingness in variable j conditioned on the
    recorded values of variable k. Diagonal entries are NaN except for
    jm_mag, whose diagonal equals the per-variable amount missing.
    ``support`` counts the items each entry is based on.
    """

    metric: str
    variables: tuple[str, ...]
    values: np.ndarray
    support: np.ndarray
    symmetric: bool

    def __post_init__(self):
        k = len(self.variables)
        if self.values.shape != (k, k) or self.support.shape != (k, k):
            raise ValueError("matrix shape does not match the variable count")
        self.values.setflags(write=False)
        self.support.setflags(write=False)

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    def pair_values(self, aggregation: str = "max") -> np.ndarray:
        """Symmetric K x K view, collapsing directions for directional metrics.

        ``aggregation`` is one of "max", "min", "avg" and only matters for
        directional metrics, where each unordered pair carries two values.
        """
        if self.symmetric:
            return self.values
        if aggregation not in PAIR_AGGREGATIONS:
            raise ValueError(f"unknown aggregation {aggregation!r}")
        a, b = self.values, self.values.T
        if aggregation == "max":
            return np.fmax(a, b)
        if aggregation == "min":
            return np.fmin(a, b)
        with np.errstate(invalid="ignore"):
            return (a + b) / 2.0

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "variables": list(self.variables),
            "symmetric": self.symmetric,
            "values": [
                [None if math.isnan(v) else v for v in row] for row in self.values.tolist()
            ],
            "support": self.support.tolist(),
        }
