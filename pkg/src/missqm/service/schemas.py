"""Pydantic request/response models for the HTTP interface."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

from ..dataset import DEFAULT_MISSING_TOKENS


class IngestConfigModel(BaseModel):
    missing_tokens: list[str] = Field(default_factory=lambda: sorted(DEFAULT_MISSING_TOKENS))
    kind_overrides: dict[str, str] = Field(default_factory=dict)
    delimiter: str = ","
    header: bool = True


class LoadRequest(BaseModel):
    """Load a dataset from a server-side path or from inline CSV text."""

    name: Optional[str] = None
    path: Optional[str] = None
    csv_text: Optional[str] = None
    config: IngestConfigModel = Field(default_factory=IngestConfigModel)


class VariableSummary(BaseModel):
    name: str
    kind: str
    missing_count: int
    recorded_count: int


class DatasetSummary(BaseModel):
    id: str
    version: int
    status: str
    name: str
    variable_count: int
    item_count: int
    total_missing_count: int
    total_missing_fraction: float
    variables: list[VariableSummary]


class StatusResponse(BaseModel):
    id: str
    version: int
    status: str
    error: Optional[str] = None


class ProfileEntryModel(BaseModel):
    variable: str
    q_am: float
    missing_count: int
    recorded_count: int


class ProfileResponse(BaseModel):
    entries: list[ProfileEntryModel]
    total_missing_fraction: float


class OrderingResponse(BaseModel):
    metric: str
    permutation: list[int]
    anchor_pair: Optional[list[int]] = None
    variables: list[str]


class SelectionResponse(BaseModel):
    indices: list[int]
    variables: list[str]


class JmPairModel(BaseModel):
    j: int | str
    k: int | str
    p_j: float
    p_k: float
    pattern: str = "equal"
    p_jk: Optional[float] = None


class CmPairModel(BaseModel):
    j: int | str
    k: int | str
    am_j: float
    range_type: str
    strength: float | str


class MissingnessSpecModel(BaseModel):
    seed: int
    mode: str
    am: Optional[dict] = None
    jm_pairs: list[JmPairModel] = Field(default_factory=list)
    cm_pairs: list[CmPairModel] = Field(default_factory=list)


class GenerateRequest(BaseModel):
    spec: MissingnessSpecModel
    name: Optional[str] = None
