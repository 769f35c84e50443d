"""FastAPI service exposing the persisted pipeline stages.

Read-mostly by design: every pipeline stage is queryable, and the only
mutation is a PHQ-9 submission, which recalibrates the subject's metric
baselines. Raw audio is never stored or served.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import HTMLResponse

from ..aggregate import HLDWindow, WINDOW_SECONDS
from ..errors import DuplicateRecord, NotFound, ValidationError
from ..linkage.config import MappingSpec, default_spec, load_mapping_config
from ..linkage.engine import BaselineProfile, LinkageEngine, Phq9Response
from ..store import MetricRecord, MetricStore
from .schemas import (
    BaselineMetricOut,
    BaselineSnapshotOut,
    BaselinesOut,
    IndicatorPoint,
    IndicatorSeries,
    IndicatorsOut,
    MetricRecordOut,
    Phq9In,
    Phq9Out,
    StatusOut,
    SupportOut,
    SupportPoint,
    TraceIndicatorOut,
    TraceOut,
    TraceRowOut,
)

SERVICE_WRITER = "service"


def _record_out(record: MetricRecord) -> MetricRecordOut:
    from ..store import _iso_time

    return MetricRecordOut(
        subject_id=record.subject_id,
        metric=record.metric_name,
        value=record.value if not isinstance(record.value, dict) else None,
        window_start=record.window_start,
        quality_ok=record.quality_ok,
        provenance=record.provenance,
        time=_iso_time(record.window_start),
    )


def create_app(
    data_dir: str | Path,
    config: str | Path | dict | MappingSpec | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    store = MetricStore(data_dir)
    spec = (
        config if isinstance(config, MappingSpec)
        else default_spec() if config is None
        else load_mapping_config(config)
    )
    phq9_writer = store.register_writer("phq9_responses", SERVICE_WRITER)
    baseline_writer = store.register_writer("baselines", SERVICE_WRITER)

    app = FastAPI(title="hearlink", version="0.1.0")

    def require_subject(subject: str) -> None:
        if subject not in store.subjects():
            raise HTTPException(status_code=404, detail=f"unknown subject {subject!r}")

    def metric_records(
        collection: str, subject: str, metric: str | None,
        start: float | None, end: float | None,
    ) -> list[MetricRecordOut]:
        require_subject(subject)
        time_range = None
        if start is not None or end is not None:
            time_range = (start or 0.0, end if end is not None else float("inf"))
        try:
            rows = store.query(collection, subject_id=subject,
                               metric_name=metric, time_range=time_range)
        except NotFound as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return [_record_out(r) for r in rows if not isinstance(r.value, dict)]

    @app.get("/status", response_model=StatusOut)
    def status() -> StatusOut:
        return StatusOut(
            data_dir=str(store.data_dir),
            subjects=sorted(store.subjects()),
            collections={
                name: len(store.query(name)) for name in store._state
            },
        )

    @app.get("/metrics/raw", response_model=list[MetricRecordOut])
    def metrics_raw(
        subject: str = "local",
        metric: str | None = None,
        start: float | None = None,
        end: float | None = None,
    ):
        return metric_records("raw_metrics", subject, metric, start, end)

    @app.get("/metrics/aggregated", response_model=list[MetricRecordOut])
    def metrics_aggregated(
        subject: str = "local",
        metric: str | None = None,
        start: float | None = None,
        end: float | None = None,
    ):
        return metric_records("aggregated_metrics", subject, metric, start, end)

    @app.get("/metrics/contextual", response_model=list[MetricRecordOut])
    def metrics_contextual(
        subject: str = "local",
        metric: str | None = None,
        start: float | None = None,
        end: float | None = None,
    ):
        return metric_records("contextual_metrics", subject, metric, start, end)

    @app.get("/indicators", response_model=IndicatorsOut)
    def indicators(subject: str = "local"):
        require_subject(subject)
        rows = store.query("analyzed_metrics", subject_id=subject)
        series: dict[int, dict[float, IndicatorPoint]] = {}
        for record in rows:
            name = record.metric_name
            if not name.startswith("indicator_"):
                continue
            _, num, fieldname = name.split("_", 2)
            indicator = int(num)
            point = series.setdefault(indicator, {}).setdefault(
                record.window_start, IndicatorPoint(window_start=record.window_start)
            )
            if fieldname == "score":
                point.score = record.value
            elif fieldname == "ema":
                point.ema = record.value
            elif fieldname == "coverage":
                point.coverage = record.value
            elif fieldname == "bit":
                point.bit = int(record.value) if record.value is not None else 0
        return IndicatorsOut(
            subject_id=subject,
            indicators=[
                IndicatorSeries(
                    indicator=i,
                    beta=spec.betas.get(i, 0.0),
                    theta=spec.thetas.get(i, 1.0),
                    points=[series[i][t] for t in sorted(series[i])],
                )
                for i in sorted(series)
            ],
        )

    @app.get("/support", response_model=SupportOut)
    def support(subject: str = "local"):
        require_subject(subject)
        rows = store.query("analyzed_metrics", subject_id=subject,
                           metric_name="mdd_support")
        return SupportOut(
            subject_id=subject,
            points=[
                SupportPoint(window_start=r.window_start, support=int(r.value or 0))
                for r in rows
            ],
        )

    @app.get("/baselines", response_model=BaselinesOut)
    def baselines(subject: str = "local"):
        require_subject(subject)
        rows = store.query("baselines", subject_id=subject,
                           metric_name="baseline_snapshot")
        snapshots = []
        for record in rows:
            payload = record.value or {}
            snapshots.append(
                BaselineSnapshotOut(
                    version=int(record.window_start),
                    reason=payload.get("reason", ""),
                    metrics={
                        name: BaselineMetricOut(**fields)
                        for name, fields in payload.get("metrics", {}).items()
                    },
                )
            )
        return BaselinesOut(subject_id=subject, snapshots=snapshots)

    @app.get("/trace/{window}", response_model=TraceOut)
    def trace(window: float, subject: str = "local"):
        require_subject(subject)
        rows = store.query("traces", subject_id=subject, metric_name="trace",
                           time_range=(window, window))
        if not rows:
            raise HTTPException(status_code=404,
                                detail=f"no trace at window {window}")
        payload = rows[0].value or {}
        analyzed = {
            r.metric_name: r.value
            for r in store.query("analyzed_metrics", subject_id=subject,
                                 time_range=(window, window))
        }
        indicators_out = []
        for key in sorted(payload, key=int):
            indicator = int(key)
            rows_out = [
                TraceRowOut(**row, available=("psi" in row))
                for row in payload[key]
            ]
            indicators_out.append(
                TraceIndicatorOut(
                    indicator=indicator,
                    score=analyzed.get(f"indicator_{indicator}_score"),
                    ema=analyzed.get(f"indicator_{indicator}_ema"),
                    coverage=analyzed.get(f"indicator_{indicator}_coverage"),
                    bit=(
                        int(analyzed[f"indicator_{indicator}_bit"])
                        if analyzed.get(f"indicator_{indicator}_bit") is not None
                        else None
                    ),
                    rows=rows_out,
                )
            )
        support_value = analyzed.get("mdd_support")
        return TraceOut(
            subject_id=subject,
            window_start=window,
            support=int(support_value) if support_value is not None else None,
            indicators=indicators_out,
        )

    @app.get("/config")
    def config_out():
        return {
            "entries": [
                {
                    "feature": e.feature, "biomarker": e.biomarker,
                    "indicator": e.indicator, "relationship": e.relationship,
                    "direction": e.direction, "weight": e.weight,
                    "descriptor": e.descriptor, "signal_group": e.signal_group,
                }
                for e in spec.entries
            ],
            "indicators": {
                str(i): {"beta": spec.betas[i], "theta": spec.thetas[i]}
                for i in range(1, 10)
            },
            "clip": {"default": spec.clip_default, **spec.clip},
            "warmup_windows": spec.warmup_windows,
        }

    @app.post("/phq9", response_model=Phq9Out)
    def submit_phq9(body: Phq9In):
        require_subject(body.subject_id)
        try:
            response = Phq9Response.validate(body.timestamp, body.items)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

        # windows observed since the previous submission
        previous = store.query("phq9_responses", subject_id=body.subject_id)
        marker = -1.0
        for record in previous:
            through = (record.value or {}).get("through_window", -1.0)
            marker = max(marker, float(through))

        aggregated = store.query("aggregated_metrics", subject_id=body.subject_id)
        by_window: dict[float, dict] = {}
        for record in aggregated:
            if record.window_start <= marker:
                continue
            bucket = by_window.setdefault(
                record.window_start,
                {"metrics": {}, "quality_ok": record.quality_ok, "voiced": 0.0},
            )
            if record.metric_name == "voiced_fraction":
                bucket["voiced"] = record.value or 0.0
            elif record.value is not None:
                bucket["metrics"][record.metric_name] = record.value
            bucket["quality_ok"] = bucket["quality_ok"] and record.quality_ok

        windows = [
            HLDWindow(
                window_start=start,
                window_len=WINDOW_SECONDS,
                metrics=bucket["metrics"],
                voiced_fraction=bucket["voiced"],
                quality_ok=bucket["quality_ok"],
            )
            for start, bucket in sorted(by_window.items())
        ]

        snapshots = store.query("baselines", subject_id=body.subject_id,
                                metric_name="baseline_snapshot")
        profile = (
            BaselineProfile.from_snapshot((snapshots[-1].value or {}).get("metrics", {}))
            if snapshots else BaselineProfile()
        )
        engine = LinkageEngine(spec, baseline=profile)
        updated = engine.apply_phq9(response, windows)

        through_window = max(by_window) if by_window else marker
        try:
            store.append(
                phq9_writer,
                MetricRecord(
                    collection="phq9_responses", subject_id=body.subject_id,
                    metric_name="phq9",
                    value={
                        "timestamp": response.timestamp,
                        "items": response.items,
                        "through_window": through_window,
                    },
                    window_start=float(len(previous)),
                    provenance="service",
                ),
            )
            store.append(
                baseline_writer,
                MetricRecord(
                    collection="baselines", subject_id=body.subject_id,
                    metric_name="baseline_snapshot",
                    value={"reason": "phq9", "metrics": engine.baseline.snapshot()},
                    window_start=float(len(snapshots)),
                    provenance="service",
                ),
            )
        except DuplicateRecord as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc

        return Phq9Out(
            subject_id=body.subject_id,
            stored=True,
            absorbed_windows=len(windows),
            updated_metrics=updated,
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/app", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    @app.get("/", response_class=HTMLResponse)
    def index():
        return (
            "<html><body><h1>hearlink service</h1>"
            "<p>See <a href='/docs'>/docs</a> for the API"
            " (dashboard at /app when built).</p></body></html>"
        )

    return app
