"""Per-variable amount-missing metric and the dataset-level profile."""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass

from .dataset import IncompleteDataset
from .errors import EmptyDatasetError


@dataclass(frozen=True)
class ProfileEntry:
    variable: str
    q_am: float
    missing_count: int
    recorded_count: int


@dataclass(frozen=True)
class MissingnessProfile:
    entries: tuple[ProfileEntry, ...]
    total_missing_fraction: float

    @property
    def q_am(self) -> tuple[float, ...]:
        return tuple(e.q_am for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "entries": [
                {
                    "variable": e.variable,
                    "q_am": e.q_am,
                    "missing_count": e.missing_count,
                    "recorded_count": e.recorded_count,
                }
                for e in self.entries
            ],
            "total_missing_fraction": self.total_missing_fraction,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def amount_missing(d: IncompleteDataset, j: int | str) -> float:
    """Fraction of items missing in variable j, in [0, 1].

    Computed as an integer count divided once, so the result is an exact
    rational with denominator N.
    """
    if d.item_count == 0:
        raise EmptyDatasetError("amount missing is undefined for an empty dataset")
    return d[d.resolve(j)].missing_count / d.item_count


def profile(d: IncompleteDataset) -> MissingnessProfile:
    """Amount-missing profile over all variables, in dataset order."""
    if d.item_count == 0:
        raise EmptyDatasetError("profile is undefined for an empty dataset")
    n = d.item_count
    entries = tuple(
        ProfileEntry(v.name, v.missing_count / n, v.missing_count, v.recorded_count)
        for v in d.variables
    )
    total = sum(v.missing_count for v in d.variables) / (d.variable_count * n)
    return MissingnessProfile(entries=entries, total_missing_fraction=total)


def write_profile_csv(p: MissingnessProfile, path: str | os.PathLike) -> None:
    """Two-column CSV: variable, q_am (nine decimal places)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        write_profile_rows(p, fh)


def write_profile_rows(p: MissingnessProfile, fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(["variable", "q_am"])
    for e in p.entries:
        writer.writerow([e.variable, f"{e.q_am:.9f}"])
