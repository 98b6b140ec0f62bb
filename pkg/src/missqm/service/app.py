"""FastAPI application wrapping the metrics engine.

All numbers served here come straight out of the cached core computations;
the routes only reshape them into JSON. Heavy artifacts (matrices,
binnings) are computed once per dataset version in the background, and
reads return a pending status until they land.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, RedirectResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__
from ..conditional import conditional_profile
from ..dataset import NUMERICAL, IngestConfig
from ..errors import (
    FeasibilityError,
    IncompleteInputError,
    IngestError,
    InvalidSpecError,
    MissqmError,
    UnknownMetricError,
)
from ..exports import export_network
from ..filters import Q_AM, parse_filter
from ..generate import spec_from_dict
from ..matrices import CM_DID, CM_H, JM_ABS, JM_DIR, JM_MAG, PAIRWISE_METRICS
from ..ordering import order_by_pairwise, order_by_univariate, threshold_select
from .schemas import (
    DatasetSummary,
    GenerateRequest,
    IngestConfigModel,
    LoadRequest,
    StatusResponse,
)
from .state import FAILED, PENDING, SessionState

UI_DIR_ENV = "MISSQM_UI_DIR"

_BAD_REQUEST = (IngestError, InvalidSpecError, FeasibilityError, IncompleteInputError,
                UnknownMetricError, ValueError)


def _config_from_model(model: IngestConfigModel) -> IngestConfig:
    return IngestConfig(
        missing_tokens=frozenset(model.missing_tokens),
        kind_overrides=dict(model.kind_overrides),
        delimiter=model.delimiter,
        header=model.header,
    )


def _default_ui_dir() -> str | None:
    configured = os.environ.get(UI_DIR_ENV)
    if configured:
        return configured
    here = os.path.dirname(os.path.abspath(__file__))
    for base in (os.getcwd(), os.path.join(here, "..", "..", "..")):
        candidate = os.path.abspath(os.path.join(base, "frontend", "dist"))
        if os.path.isdir(candidate):
            return candidate
    return None


def create_app(state: SessionState | None = None, ui_dir: str | None = None) -> FastAPI:
    state = state or SessionState()
    app = FastAPI(title="missqm", version=__version__)
    app.state.session = state

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )

    class PendingComputation(Exception):
        def __init__(self, entry):
            self.entry = entry

    def entry_or_404(dataset_id: str):
        try:
            return state.get(dataset_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id!r}")

    def ready_artifacts(dataset_id: str):
        try:
            entry, artifacts = state.artifacts(dataset_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id!r}")
        if entry.status == FAILED:
            raise HTTPException(status_code=500, detail=f"computation failed: {entry.error}")
        if artifacts is None:
            raise PendingComputation(entry)
        return entry, artifacts

    @app.exception_handler(PendingComputation)
    async def pending_handler(_, exc: PendingComputation):
        return JSONResponse(
            status_code=202,
            content={"id": exc.entry.dataset_id, "version": exc.entry.version,
                     "status": PENDING},
        )

    @app.exception_handler(MissqmError)
    async def missqm_error_handler(_, exc: MissqmError):
        return JSONResponse(status_code=400,
                            content={"detail": str(exc), "error": type(exc).__name__})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/datasets")
    def list_datasets() -> list[DatasetSummary]:
        return [DatasetSummary(**e.summary()) for e in state.entries()]

    @app.post("/datasets", response_model=DatasetSummary)
    def load_dataset(request: LoadRequest):
        if (request.path is None) == (request.csv_text is None):
            raise HTTPException(status_code=400,
                                detail="exactly one of 'path' and 'csv_text' is required")
        try:
            config = _config_from_model(request.config)
            if request.path is not None:
                entry = state.load_path(request.path, config, name=request.name)
            else:
                entry = state.load_text(request.csv_text, config,
                                        name=request.name or "dataset")
        except _BAD_REQUEST as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except OSError as exc:
            raise HTTPException(status_code=400, detail=f"cannot read input: {exc}")
        return DatasetSummary(**entry.summary())

    @app.get("/datasets/{dataset_id}", response_model=DatasetSummary)
    def dataset_summary(dataset_id: str):
        return DatasetSummary(**entry_or_404(dataset_id).summary())

    @app.post("/datasets/{dataset_id}/reload", response_model=DatasetSummary)
    def reload_dataset(dataset_id: str):
        entry_or_404(dataset_id)
        try:
            entry = state.reload(dataset_id)
        except _BAD_REQUEST as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return DatasetSummary(**entry.summary())

    @app.get("/datasets/{dataset_id}/status", response_model=StatusResponse)
    def dataset_status(dataset_id: str):
        entry = entry_or_404(dataset_id)
        return StatusResponse(id=entry.dataset_id, version=entry.version,
                              status=entry.status, error=entry.error)

    @app.get("/datasets/{dataset_id}/profile")
    def dataset_profile(dataset_id: str):
        _, artifacts = ready_artifacts(dataset_id)
        return artifacts.profile.to_dict()

    @app.get("/datasets/{dataset_id}/matrices/{metric}")
    def dataset_matrix(dataset_id: str, metric: str):
        _, artifacts = ready_artifacts(dataset_id)
        if metric not in artifacts.matrices:
            raise HTTPException(status_code=404,
                                detail=f"unknown metric {metric!r}; "
                                       f"choose one of {', '.join(PAIRWISE_METRICS)}")
        return artifacts.matrices[metric].to_dict()

    @app.get("/datasets/{dataset_id}/jm")
    def dataset_jm(dataset_id: str):
        _, artifacts = ready_artifacts(dataset_id)
        return {m: artifacts.matrices[m].to_dict() for m in (JM_MAG, JM_DIR, JM_ABS)}

    @app.get("/datasets/{dataset_id}/cm")
    def dataset_cm(dataset_id: str):
        _, artifacts = ready_artifacts(dataset_id)
        return {m: artifacts.matrices[m].to_dict() for m in (CM_DID, CM_H)}

    @app.get("/datasets/{dataset_id}/distributions")
    def dataset_distributions(dataset_id: str):
        entry, artifacts = ready_artifacts(dataset_id)
        return {
            "variables": list(entry.dataset.variable_names),
            "distributions": [None if d is None else d.to_dict()
                              for d in artifacts.distributions],
        }

    @app.get("/datasets/{dataset_id}/ordering")
    def dataset_ordering(dataset_id: str, metric: str = Q_AM, descending: bool = True,
                         aggregation: str = "max"):
        entry, artifacts = ready_artifacts(dataset_id)
        if metric == Q_AM:
            ordering = order_by_univariate(artifacts.profile, descending=descending)
        elif metric in artifacts.matrices:
            ordering = order_by_pairwise(artifacts.matrices[metric], aggregation=aggregation)
        else:
            raise HTTPException(status_code=404, detail=f"unknown ordering metric {metric!r}")
        names = entry.dataset.variable_names
        out = ordering.to_dict()
        out["variables"] = [names[j] for j in ordering.permutation]
        return out

    @app.get("/datasets/{dataset_id}/selection")
    def dataset_selection(dataset_id: str, filter: str = "", metric: str | None = None,
                          top_n: int | None = Query(default=None, ge=1)):
        entry, artifacts = ready_artifacts(dataset_id)
        try:
            predicates = parse_filter(filter) if filter else []
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        metrics = {p.metric for p in predicates}
        if metric is not None:
            metrics.add(metric)
        pairwise = metrics - {Q_AM}
        if pairwise and Q_AM in metrics:
            raise HTTPException(status_code=400,
                                detail="cannot mix q_am with pairwise metrics in one selection")
        if pairwise:
            source = [artifacts.matrices[m] for m in PAIRWISE_METRICS]
            indices = threshold_select(source, predicates, top_n=top_n, rank_metric=metric)
        else:
            indices = threshold_select(artifacts.profile, predicates, top_n=top_n)
        names = entry.dataset.variable_names
        return {"indices": indices, "variables": [names[j] for j in indices]}

    @app.get("/datasets/{dataset_id}/conditional")
    def dataset_conditional(dataset_id: str, variable: str):
        entry, artifacts = ready_artifacts(dataset_id)
        dataset = entry.dataset
        try:
            j = dataset.index_of(variable)
        except KeyError:
            try:
                j = dataset.resolve(int(variable))
            except (ValueError, IndexError):
                raise HTTPException(status_code=404,
                                    detail=f"unknown variable {variable!r}")
        profiles = conditional_profile(dataset, j)
        q_am = {e.variable: e.q_am for e in artifacts.profile.entries}
        counts = {e.variable: e.missing_count for e in artifacts.profile.entries}
        selected = dataset[j].name
        own = artifacts.distributions[j]
        return {
            "selected": selected,
            "selected_index": j,
            "item_count": dataset.item_count,
            "selected_q_am": q_am[selected],
            "selected_missing_count": counts[selected],
            "selected_overall": None if own is None else own.to_dict(),
            "entries": [
                {**p.to_dict(), "q_am": q_am[p.condition],
                 "missing_count": counts[p.condition]}
                for p in profiles
            ],
        }

    @app.get("/datasets/{dataset_id}/items")
    def dataset_items(dataset_id: str):
        entry = entry_or_404(dataset_id)
        dataset = entry.dataset
        columns = []
        for v in dataset.variables:
            if v.kind == NUMERICAL:
                values = [None if m else float(x) for x, m in zip(v.values, v.missing)]
            else:
                values = [None if m else str(x) for x, m in zip(v.values, v.missing)]
            columns.append({
                "name": v.name, "kind": v.kind,
                "values": values, "missing": v.missing.tolist(),
            })
        return {"item_count": dataset.item_count, "columns": columns}

    @app.get("/datasets/{dataset_id}/network")
    def dataset_network(dataset_id: str, filter: str = ""):
        entry, artifacts = ready_artifacts(dataset_id)
        try:
            predicates = parse_filter(filter) if filter else []
            network = export_network(entry.dataset, artifacts.matrices.values(), predicates)
        except _BAD_REQUEST as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return network.to_dict()

    @app.post("/datasets/{dataset_id}/generate")
    def generate_dataset(dataset_id: str, request: GenerateRequest):
        entry_or_404(dataset_id)
        try:
            spec = spec_from_dict(request.spec.model_dump(exclude_none=True))
            generated = state.generate(dataset_id, spec, name=request.name)
        except _BAD_REQUEST as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "dataset": generated.summary(),
            "manifest": generated.manifest.to_dict(),
        }

    @app.get("/datasets/{dataset_id}/manifest")
    def dataset_manifest(dataset_id: str):
        entry = entry_or_404(dataset_id)
        if entry.manifest is None:
            raise HTTPException(status_code=404,
                                detail="dataset was not produced by the generator")
        return entry.manifest.to_dict()

    resolved_ui = ui_dir if ui_dir is not None else _default_ui_dir()
    if resolved_ui and os.path.isdir(resolved_ui):
        app.mount("/ui", StaticFiles(directory=resolved_ui, html=True), name="ui")

        @app.get("/", include_in_schema=False)
        def index():
            return RedirectResponse(url="/ui/")

    return app
