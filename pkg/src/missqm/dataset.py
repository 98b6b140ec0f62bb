"""Columnar incomplete datasets with an explicit missing mask.

A dataset holds K variables over N items. Every variable keeps its values
alongside a boolean mask (True = missing), so metrics never have to guess
which sentinel means "absent". Datasets are immutable after construction;
generators produce new dataset values instead of mutating.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import IngestError

NUMERICAL = "numerical"
CATEGORICAL = "categorical"

DEFAULT_MISSING_TOKENS = frozenset({"NaN", "NA", "N/A", "null", ""})

#: Environment variable overriding the default missing tokens (comma separated).
MISSING_TOKENS_ENV = "MISSQM_MISSING_TOKENS"


def default_missing_tokens() -> frozenset[str]:
    """Default missing-value tokens, honouring the environment override."""
    raw = os.environ.get(MISSING_TOKENS_ENV)
    if raw is None:
        return DEFAULT_MISSING_TOKENS
    return frozenset(tok.strip() for tok in raw.split(","))


@dataclass(frozen=True)
class IngestConfig:
    """How raw CSV cells are turned into values and missing flags."""

    missing_tokens: frozenset[str] = field(default_factory=default_missing_tokens)
    kind_overrides: dict[str, str] = field(default_factory=dict)
    delimiter: str = ","
    header: bool = True

    def __post_init__(self):
        if not self.missing_tokens:
            raise ValueError("missing_tokens must not be empty")
        for name, kind in self.kind_overrides.items():
            if kind not in (NUMERICAL, CATEGORICAL):
                raise ValueError(f"unknown kind {kind!r} for variable {name!r}")

    def normalized_tokens(self) -> frozenset[str]:
        return frozenset(t.strip().lower() for t in self.missing_tokens)


@dataclass(frozen=True)
class ItemSet:
    """An immutable set of item indices inside a universe of size N."""

    universe: int
    members: frozenset[int]

    def __post_init__(self):
        if any(i < 0 or i >= self.universe for i in self.members):
            raise ValueError("item index outside universe")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item: int) -> bool:
        return item in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def _check(self, other: "ItemSet") -> None:
        if other.universe != self.universe:
            raise ValueError("item sets live in different universes")

    def __and__(self, other: "ItemSet") -> "ItemSet":
        self._check(other)
        return ItemSet(self.universe, self.members & other.members)

    def __or__(self, other: "ItemSet") -> "ItemSet":
        self._check(other)
        return ItemSet(self.universe, self.members | other.members)

    def __sub__(self, other: "ItemSet") -> "ItemSet":
        self._check(other)
        return ItemSet(self.universe, self.members - other.members)

    def complement(self) -> "ItemSet":
        return ItemSet(self.universe, frozenset(range(self.universe)) - self.members)

    def indices(self) -> np.ndarray:
        """Sorted member indices as an int array."""
        return np.fromiter(sorted(self.members), dtype=np.intp, count=len(self.members))

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "ItemSet":
        return cls(len(mask), frozenset(np.flatnonzero(mask).tolist()))


@dataclass(frozen=True)
class VariableColumn:
    """One variable: values plus an explicit missing mask.

    ``values`` is float64 for numerical variables and an object array of
    strings for categorical ones. Entries under the mask are placeholders
    (NaN / None) and must never be read.
    """

    name: str
    kind: str
    values: np.ndarray
    missing: np.ndarray

    def __post_init__(self):
        if self.kind not in (NUMERICAL, CATEGORICAL):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.values.shape != self.missing.shape or self.values.ndim != 1:
            raise ValueError("values and missing mask must be 1-d and equally long")
        self.values.setflags(write=False)
        self.missing.setflags(write=False)

    @property
    def item_count(self) -> int:
        return int(self.values.shape[0])

    @property
    def missing_count(self) -> int:
        return int(self.missing.sum())

    @property
    def recorded_count(self) -> int:
        return self.item_count - self.missing_count

    def recorded_values(self) -> np.ndarray:
        """Values at recorded positions, in item order."""
        return self.values[~self.missing]


@dataclass(frozen=True)
class IncompleteDataset:
    """An immutable table of K variables over N items."""

    name: str
    variables: tuple[VariableColumn, ...]

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise IngestError(f"duplicate variable names: {', '.join(dupes)}")
        lengths = {v.item_count for v in self.variables}
        if len(lengths) > 1:
            raise IngestError("variables have inconsistent item counts")

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    @property
    def item_count(self) -> int:
        return self.variables[0].item_count if self.variables else 0

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def __getitem__(self, j: int) -> VariableColumn:
        return self.variables[j]

    def index_of(self, name: str) -> int:
        for j, v in enumerate(self.variables):
            if v.name == name:
                return j
        raise KeyError(f"no variable named {name!r}")

    def resolve(self, ref: int | str) -> int:
        """Turn a variable reference (index or name) into an index."""
        if isinstance(ref, str):
            return self.index_of(ref)
        j = int(ref)
        if j < 0 or j >= self.variable_count:
            raise IndexError(f"variable index {j} out of range (K={self.variable_count})")
        return j

    def missing_matrix(self) -> np.ndarray:
        """K x N boolean matrix, True where missing."""
        if not self.variables:
            return np.zeros((0, 0), dtype=bool)
        return np.vstack([v.missing for v in self.variables])

    def total_missing_count(self) -> int:
        return int(sum(v.missing_count for v in self.variables))

    def summary(self) -> dict:
        """JSON-ready summary: name, K, N and per-variable kind/missing."""
        cells = self.variable_count * self.item_count
        return {
            "name": self.name,
            "variable_count": self.variable_count,
            "item_count": self.item_count,
            "total_missing_count": self.total_missing_count(),
            "total_missing_fraction": (self.total_missing_count() / cells) if cells else 0.0,
            "variables": [
                {
                    "name": v.name,
                    "kind": v.kind,
                    "missing_count": v.missing_count,
                    "recorded_count": v.recorded_count,
                }
                for v in self.variables
            ],
        }

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2)


def missing_set(d: IncompleteDataset, j: int | str) -> ItemSet:
    """Items with a missing value in variable j."""
    return ItemSet.from_mask(d[d.resolve(j)].missing)


def recorded_set(d: IncompleteDataset, j: int | str) -> ItemSet:
    """Items with a recorded value in variable j (complement of missing_set)."""
    return ItemSet.from_mask(~d[d.resolve(j)].missing)


def _parse_number(cell: str) -> float | None:
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def load_csv(path: str | os.PathLike, config: IngestConfig | None = None,
             name: str | None = None) -> IncompleteDataset:
    """Load a CSV file into an IncompleteDataset.

    Cells matching a missing token (case-insensitive, trimmed) become
    missing. A column is numerical when every recorded cell parses as a
    finite number, categorical otherwise; ``config.kind_overrides`` wins
    over inference. Column order is preserved.
    """
    config = config or IngestConfig()
    with open(path, "r", newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh, delimiter=config.delimiter))
    return dataset_from_rows(
        rows, config, name=name if name is not None else os.path.splitext(os.path.basename(path))[0]
    )


def load_csv_text(text: str, config: IngestConfig | None = None,
                  name: str = "dataset") -> IncompleteDataset:
    """Like load_csv but from an in-memory CSV string."""
    config = config or IngestConfig()
    rows = list(csv.reader(text.splitlines(), delimiter=config.delimiter))
    return dataset_from_rows(rows, config, name=name)


def dataset_from_rows(rows: list[list[str]], config: IngestConfig,
                      name: str = "dataset") -> IncompleteDataset:
    if not rows:
        raise IngestError("file is empty")

    if config.header:
        header = [h.strip() for h in rows[0]]
        data_rows = rows[1:]
        first_data_row = 2
    else:
        header = [f"v{i}" for i in range(len(rows[0]))]
        data_rows = rows
        first_data_row = 1

    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise IngestError(f"duplicate headers: {', '.join(dupes)}")
    k = len(header)

    for offset, row in enumerate(data_rows):
        if len(row) != k:
            raise IngestError(
                f"row {first_data_row + offset} has {len(row)} fields, expected {k}"
            )

    tokens = config.normalized_tokens()
    n = len(data_rows)
    cells = [[cell.strip() for cell in row] for row in data_rows]

    columns = []
    for j, colname in enumerate(header):
        raw = [cells[i][j] for i in range(n)]
        miss = np.array([c.lower() in tokens for c in raw], dtype=bool)

        kind = config.kind_overrides.get(colname)
        parsed = [None if miss[i] else _parse_number(raw[i]) for i in range(n)]
        if kind is None:
            all_numeric = all(parsed[i] is not None for i in range(n) if not miss[i])
            kind = NUMERICAL if all_numeric else CATEGORICAL

        if kind == NUMERICAL:
            values = np.full(n, np.nan)
            for i in range(n):
                if not miss[i]:
                    if parsed[i] is None:
                        raise IngestError(
                            f"variable {colname!r} is declared numerical but row "
                            f"{first_data_row + i} holds {raw[i]!r}"
                        )
                    values[i] = parsed[i]
        else:
            values = np.array([None if miss[i] else raw[i] for i in range(n)], dtype=object)

        columns.append(VariableColumn(colname, kind, values, miss))

    return IncompleteDataset(name=name, variables=tuple(columns))


def format_cell(column: VariableColumn, i: int, missing_token: str = "NaN") -> str:
    if column.missing[i]:
        return missing_token
    if column.kind == NUMERICAL:
        return repr(float(column.values[i]))
    return str(column.values[i])


def save_csv(d: IncompleteDataset, path: str | os.PathLike,
             missing_token: str = "NaN", delimiter: str = ",") -> None:
    """Write the dataset back to CSV.

    Missing cells become ``missing_token``. Numerical values use Python's
    shortest round-trip float repr, so load -> save -> load is stable
    (the first save normalizes formatting such as "1" -> "1.0").
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow(d.variable_names)
        for i in range(d.item_count):
            writer.writerow([format_cell(v, i, missing_token) for v in d.variables])


def replace_masks(d: IncompleteDataset, masks: dict[int, np.ndarray],
                  name: str | None = None) -> IncompleteDataset:
    """New dataset with some variables' missing masks replaced.

    Values are carried over untouched; only the mask changes. Used by the
    missingness generators.
    """
    columns = []
    for j, col in enumerate(d.variables):
        if j in masks:
            mask = np.asarray(masks[j], dtype=bool).copy()
            columns.append(VariableColumn(col.name, col.kind, col.values, mask))
        else:
            columns.append(col)
    return IncompleteDataset(name=name if name is not None else d.name, variables=tuple(columns))
