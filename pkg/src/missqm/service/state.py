"""In-memory session state: datasets and their cached metric artifacts.

Each dataset version gets one background computation producing the profile,
all five pairwise matrices and the per-variable distributions. Reads never
see a half-built cache: artifacts become visible only when the whole
computation lands, and a stale computation (superseded by a reload) is
dropped on arrival.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from ..conditional import BinnedDistribution, bin_distribution
from ..dataset import IncompleteDataset, IngestConfig, load_csv, load_csv_text
from ..errors import NoRecordedValuesError
from ..exports import compute_all_matrices
from ..generate import GroundTruthManifest, MissingnessSpec, inject
from ..matrices import PairwiseQMMatrix
from ..univariate import MissingnessProfile, profile

PENDING = "pending"
READY = "ready"
FAILED = "failed"


@dataclass
class Artifacts:
    profile: MissingnessProfile
    matrices: dict[str, PairwiseQMMatrix]
    distributions: list[BinnedDistribution | None]


@dataclass
class DatasetEntry:
    dataset_id: str
    version: int
    dataset: IncompleteDataset
    source_path: str | None = None
    source_text: str | None = None
    config: IngestConfig = field(default_factory=IngestConfig)
    manifest: GroundTruthManifest | None = None
    status: str = PENDING
    error: str | None = None
    artifacts: Artifacts | None = None

    def summary(self) -> dict:
        out = self.dataset.summary()
        out["id"] = self.dataset_id
        out["version"] = self.version
        out["status"] = self.status
        return out


def _compute_artifacts(dataset: IncompleteDataset) -> Artifacts:
    prof = profile(dataset)
    matrices = compute_all_matrices(dataset)
    distributions: list[BinnedDistribution | None] = []
    for j in range(dataset.variable_count):
        try:
            distributions.append(bin_distribution(dataset, j))
        except NoRecordedValuesError:
            distributions.append(None)
    return Artifacts(profile=prof, matrices=matrices, distributions=distributions)


class SessionState:
    """Registry of loaded datasets, safe for concurrent readers."""

    def __init__(self, eager: bool = True):
        self._lock = threading.Lock()
        self._entries: dict[str, DatasetEntry] = {}
        self._counter = 0
        #: compute in a background thread (True) or synchronously (tests may
        #: flip this off to avoid polling)
        self.eager = eager

    def _next_id(self) -> str:
        self._counter += 1
        return f"ds-{self._counter}"

    def _start_computation(self, entry: DatasetEntry) -> None:
        if not self.eager:
            self._run_computation(entry.dataset_id, entry.version)
            return
        thread = threading.Thread(
            target=self._run_computation,
            args=(entry.dataset_id, entry.version),
            daemon=True,
        )
        thread.start()

    def _run_computation(self, dataset_id: str, version: int) -> None:
        with self._lock:
            entry = self._entries.get(dataset_id)
            if entry is None or entry.version != version:
                return
            dataset = entry.dataset
        try:
            artifacts = _compute_artifacts(dataset)
            status, error = READY, None
        except Exception as exc:  # surfaced via the status endpoint
            artifacts, status, error = None, FAILED, f"{type(exc).__name__}: {exc}"
        with self._lock:
            entry = self._entries.get(dataset_id)
            if entry is None or entry.version != version:
                return
            entry.artifacts = artifacts
            entry.status = status
            entry.error = error

    def register(self, dataset: IncompleteDataset, *, source_path: str | None = None,
                 source_text: str | None = None, config: IngestConfig | None = None,
                 manifest: GroundTruthManifest | None = None) -> DatasetEntry:
        with self._lock:
            entry = DatasetEntry(
                dataset_id=self._next_id(), version=1, dataset=dataset,
                source_path=source_path, source_text=source_text,
                config=config or IngestConfig(), manifest=manifest,
            )
            self._entries[entry.dataset_id] = entry
        self._start_computation(entry)
        return entry

    def load_path(self, path: str, config: IngestConfig | None = None,
                  name: str | None = None) -> DatasetEntry:
        dataset = load_csv(path, config, name=name)
        return self.register(dataset, source_path=path, config=config)

    def load_text(self, text: str, config: IngestConfig | None = None,
                  name: str = "dataset") -> DatasetEntry:
        dataset = load_csv_text(text, config, name=name)
        return self.register(dataset, source_text=text, config=config)

    def reload(self, dataset_id: str) -> DatasetEntry:
        """Re-ingest a dataset from its stored source; bumps the version and
        clears all cached artifacts."""
        with self._lock:
            entry = self._entries[dataset_id]
            config, path, text = entry.config, entry.source_path, entry.source_text
            name = entry.dataset.name
        if path is not None:
            dataset = load_csv(path, config, name=name)
        elif text is not None:
            dataset = load_csv_text(text, config, name=name)
        else:
            raise ValueError("dataset has no reloadable source (it was generated)")
        with self._lock:
            entry = self._entries[dataset_id]
            entry.version += 1
            entry.dataset = dataset
            entry.status = PENDING
            entry.error = None
            entry.artifacts = None
            out = entry
        self._start_computation(out)
        return out

    def generate(self, source_id: str, spec: MissingnessSpec,
                 name: str | None = None) -> DatasetEntry:
        source = self.get(source_id).dataset
        generated, manifest = inject(source, spec, name=name or f"{source.name}_{spec.mode}")
        return self.register(generated, manifest=manifest)

    def get(self, dataset_id: str) -> DatasetEntry:
        with self._lock:
            if dataset_id not in self._entries:
                raise KeyError(dataset_id)
            return self._entries[dataset_id]

    def entries(self) -> list[DatasetEntry]:
        with self._lock:
            return list(self._entries.values())

    def artifacts(self, dataset_id: str) -> tuple[DatasetEntry, Artifacts | None]:
        """Entry plus its artifacts when ready, else (entry, None)."""
        with self._lock:
            if dataset_id not in self._entries:
                raise KeyError(dataset_id)
            entry = self._entries[dataset_id]
            return entry, entry.artifacts if entry.status == READY else None
