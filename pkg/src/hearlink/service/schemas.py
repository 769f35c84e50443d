"""Pydantic request/response models for the dashboard API."""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator


class MetricRecordOut(BaseModel):
    subject_id: str
    metric: str
    value: float | None
    window_start: float
    quality_ok: bool
    provenance: str
    time: str


class IndicatorPoint(BaseModel):
    window_start: float
    score: float | None = None
    ema: float | None = None
    coverage: float | None = None
    bit: int | None = None


class IndicatorSeries(BaseModel):
    indicator: int
    beta: float
    theta: float
    points: list[IndicatorPoint]


class IndicatorsOut(BaseModel):
    subject_id: str
    indicators: list[IndicatorSeries]


class SupportPoint(BaseModel):
    window_start: float
    support: int


class SupportOut(BaseModel):
    subject_id: str
    points: list[SupportPoint]


class BaselineMetricOut(BaseModel):
    mu: float
    sigma: float
    count: int
    last_update: str | None = None


class BaselineSnapshotOut(BaseModel):
    version: int
    reason: str
    metrics: dict[str, BaselineMetricOut]


class BaselinesOut(BaseModel):
    subject_id: str
    snapshots: list[BaselineSnapshotOut]


class TraceRowOut(BaseModel):
    feature: str
    weight: float
    direction: str
    value: float | None = None
    mu: float | None = None
    sigma: float | None = None
    z: float | None = None
    psi: float | None = None
    available: bool = False


class TraceIndicatorOut(BaseModel):
    indicator: int
    score: float | None = None
    ema: float | None = None
    coverage: float | None = None
    bit: int | None = None
    rows: list[TraceRowOut]


class TraceOut(BaseModel):
    subject_id: str
    window_start: float
    support: int | None = None
    indicators: list[TraceIndicatorOut]


class Phq9In(BaseModel):
    """PHQ-9 submission: exactly nine items Q1-Q9, each in [0,3]."""

    subject_id: str = "local"
    timestamp: str = Field(..., description="client-side ISO-8601 stamp")
    items: dict[str, int]

    @field_validator("items")
    @classmethod
    def _exactly_nine(cls, items: dict[str, int]) -> dict[str, int]:
        expected = {f"Q{i}" for i in range(1, 10)}
        if set(items) != expected:
            raise ValueError(f"need exactly items Q1..Q9, got {sorted(items)}")
        for key, value in items.items():
            if not 0 <= value <= 3:
                raise ValueError(f"item {key} outside [0,3]")
        return items


class Phq9Out(BaseModel):
    subject_id: str
    stored: bool
    absorbed_windows: int
    updated_metrics: dict[str, int]


class StatusOut(BaseModel):
    data_dir: str
    subjects: list[str]
    collections: dict[str, int]
