"""Shared dataset builders for the test suite."""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from missqm.dataset import CATEGORICAL, NUMERICAL, IncompleteDataset, VariableColumn

COIMBRA_NAMES = [
    "Age", "BMI", "Glucose", "Insulin", "HOMA",
    "Leptin", "Adiponectin", "Resistin", "MCP_1", "Classification",
]


def column(name: str, values, missing=None, kind: str = NUMERICAL) -> VariableColumn:
    if kind == NUMERICAL:
        arr = np.asarray(values, dtype=float)
    else:
        arr = np.array([None if v is None else str(v) for v in values], dtype=object)
    if missing is None:
        if kind == NUMERICAL:
            mask = np.isnan(arr)
        else:
            mask = np.array([v is None for v in values], dtype=bool)
    else:
        mask = np.asarray(missing, dtype=bool).copy()
    return VariableColumn(name, kind, arr, mask)


def make_dataset(columns: list[VariableColumn], name: str = "test") -> IncompleteDataset:
    return IncompleteDataset(name=name, variables=tuple(columns))


def random_masked_dataset(rng: np.random.Generator, n: int, k: int,
                          max_missing: float = 1.0) -> IncompleteDataset:
    """Random numeric data with independent random masks."""
    cols = []
    for j in range(k):
        values = rng.normal(size=n)
        p = rng.uniform(0, max_missing)
        mask = rng.random(n) < p
        cols.append(VariableColumn(f"v{j}", NUMERICAL, values, mask))
    return IncompleteDataset(name="random", variables=tuple(cols))


def random_mixed_dataset(rng: np.random.Generator, n: int, k: int) -> IncompleteDataset:
    """Random masks over mixed numeric/categorical/low-cardinality columns."""
    cols = []
    for j in range(k):
        style = rng.integers(0, 3)
        mask = rng.random(n) < rng.uniform(0, 0.8)
        if style == 0:
            values = rng.normal(size=n)
            cols.append(VariableColumn(f"v{j}", NUMERICAL, values, mask))
        elif style == 1:
            values = rng.integers(0, 4, size=n).astype(float)
            cols.append(VariableColumn(f"v{j}", NUMERICAL, values, mask))
        else:
            labels = np.array(["red", "green", "blue"], dtype=object)
            values = labels[rng.integers(0, 3, size=n)]
            cols.append(VariableColumn(f"v{j}", CATEGORICAL, values, mask))
    return IncompleteDataset(name="mixed", variables=tuple(cols))


def coimbra_like(seed: int = 42, n: int = 116) -> IncompleteDataset:
    """A complete stand-in with the ten Coimbra column names.

    Values are synthetic (skewed positives, binary class labels 1.0/2.0
    with a 52/64 split at n=116); only the shape matters to the metrics.
    """
    rng = np.random.default_rng(seed)
    cols = []
    for name in COIMBRA_NAMES[:-1]:
        values = np.round(rng.lognormal(mean=2.5, sigma=0.6, size=n), 4)
        cols.append(VariableColumn(name, NUMERICAL, values, np.zeros(n, bool)))
    ones = round(n * 52 / 116)
    labels = np.array([1.0] * ones + [2.0] * (n - ones))
    cols.append(VariableColumn("Classification", NUMERICAL, labels, np.zeros(n, bool)))
    return IncompleteDataset(name="coimbra_like", variables=tuple(cols))


@pytest.fixture
def coimbra():
    return coimbra_like()
