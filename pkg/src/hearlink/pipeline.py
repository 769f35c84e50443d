"""End-to-end orchestration: stream processing, replay analysis, benchmarking.

The continuous side runs a synchronous stage chain per stream (frame ->
gate -> LLD -> window -> linkage -> persist); it is deterministic for a
fixed input, config, and seed. The triggered side (``run_analysis``)
replays stored contextual metrics through the identical scoring path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator

import numpy as np

from .aggregate import WindowBatcher, WindowBatch, HLDWindow, assemble_window, WINDOW_SECONDS
from .audio.decode import CANONICAL_RATE, SampleBuffer, decode_pcm
from .audio.framing import StreamingFramer
from .audio.stream import read_chunks
from .audio.vad import StreamingGate, VoiceDetector
from .errors import NoData
from .linkage.config import MappingSpec, default_spec, load_mapping_config
from .linkage.engine import LinkageEngine, WindowDecision, SCORED, WARMUP
from .store import MetricRecord, MetricStore, WriterHandle

STAGES = ("ingest", "extract", "aggregate", "link", "persist")
STEADY_STATE_WINDOW = 5
PIPELINE_WRITER = "pipeline"


@dataclass
class StageTiming:
    stage: str
    window_index: int
    wall_time: float
    audio_time: float = WINDOW_SECONDS

    @property
    def rtf(self) -> float:
        return self.wall_time / self.audio_time


@dataclass
class WindowTiming:
    """Wall time per stage for one window of audio."""

    window_index: int
    stages: dict[str, float] = field(default_factory=dict)
    audio_time: float = WINDOW_SECONDS

    @property
    def total(self) -> float:
        return sum(self.stages.values())

    @property
    def rtf(self) -> float:
        return self.total / self.audio_time

    def as_stage_timings(self) -> list[StageTiming]:
        return [
            StageTiming(stage, self.window_index, self.stages.get(stage, 0.0),
                        self.audio_time)
            for stage in STAGES
        ]


@dataclass
class RunReport:
    subject_id: str
    windows: int = 0
    scored: int = 0
    warmup: int = 0
    low_quality: int = 0
    support_flags: int = 0
    timings: list[WindowTiming] = field(default_factory=list)
    loop_wall_time: float = 0.0


class StreamPipeline:
    """One subject's stream: push sample chunks, windows land in the store."""

    def __init__(
        self,
        spec: MappingSpec,
        store: MetricStore,
        subject_id: str = "local",
        sample_rate: int = CANONICAL_RATE,
        detector: VoiceDetector | None = None,
    ):
        self.spec = spec
        self.store = store
        self.subject_id = subject_id
        self.sample_rate = sample_rate
        self.framer = StreamingFramer(sample_rate)
        self.gate = StreamingGate(detector)
        from .features.lld import LLDExtractor

        self.lld = LLDExtractor(sample_rate)
        self.batcher = WindowBatcher()
        self.engine = LinkageEngine(spec)
        self.report = RunReport(subject_id=subject_id)
        self._snapshot_count = 0
        self._writers: dict[str, WriterHandle] = {
            name: store.register_writer(name, PIPELINE_WRITER)
            for name in (
                "raw_metrics", "aggregated_metrics", "contextual_metrics",
                "analyzed_metrics", "traces", "baselines",
            )
        }
        self._pending_ingest = 0.0
        self._pending_extract = 0.0
        self._pending_collect = 0.0

    # -- streaming ----------------------------------------------------------

    def push(self, samples: np.ndarray) -> list[HLDWindow]:
        t0 = time.perf_counter()
        frames = self.gate.push(self.framer.push(samples))
        t1 = time.perf_counter()
        llds = [self.lld.process(f) for f in frames]
        t2 = time.perf_counter()
        batches: list[WindowBatch] = []
        for frame, lld in zip(frames, llds):
            batches.extend(self.batcher.push(frame, lld))
        t3 = time.perf_counter()
        self._pending_ingest += t1 - t0
        self._pending_extract += t2 - t1
        self._pending_collect += t3 - t2
        return [self._complete(batch) for batch in batches]

    def finish(self, total_duration: float | None = None) -> list[HLDWindow]:
        t0 = time.perf_counter()
        held = self.gate.flush()
        t1 = time.perf_counter()
        llds = [self.lld.process(f) for f in held]
        t2 = time.perf_counter()
        batches: list[WindowBatch] = []
        for frame, lld in zip(held, llds):
            batches.extend(self.batcher.push(frame, lld))
        batches.extend(self.batcher.close(total_duration))
        t3 = time.perf_counter()
        self._pending_ingest += t1 - t0
        self._pending_extract += t2 - t1
        self._pending_collect += t3 - t2
        return [self._complete(batch) for batch in batches]

    # -- per-window work ------------------------------------------------------

    def _complete(self, batch: WindowBatch) -> HLDWindow:
        timing = WindowTiming(window_index=self.report.windows)
        timing.stages["ingest"] = self._pending_ingest
        timing.stages["extract"] = self._pending_extract
        collect = self._pending_collect
        self._pending_ingest = 0.0
        self._pending_extract = 0.0
        self._pending_collect = 0.0

        t0 = time.perf_counter()
        window = assemble_window(
            batch.window_start, batch.frames, batch.llds, self.sample_rate
        )
        t1 = time.perf_counter()
        was_warm = self.engine.warmed_up
        decision = self.engine.process_window(window)
        t2 = time.perf_counter()
        self._persist(batch, window, decision)
        if not was_warm and self.engine.warmed_up:
            self._snapshot_baselines(reason="warmup")
        t3 = time.perf_counter()

        timing.stages["aggregate"] = collect + (t1 - t0)
        timing.stages["link"] = t2 - t1
        timing.stages["persist"] = t3 - t2
        self.report.timings.append(timing)
        self.report.windows += 1
        if decision.status == SCORED:
            self.report.scored += 1
            if decision.support:
                self.report.support_flags += 1
        elif decision.status == WARMUP:
            self.report.warmup += 1
        else:
            self.report.low_quality += 1
        return window

    def _append(self, collection: str, metric: str, value, window_start: float,
                quality_ok: bool = True, provenance: str = "") -> None:
        self.store.append(
            self._writers[collection],
            MetricRecord(
                collection=collection, subject_id=self.subject_id,
                metric_name=metric, value=value, window_start=window_start,
                quality_ok=quality_ok, provenance=provenance,
            ),
        )

    def _persist(self, batch: WindowBatch, window: HLDWindow,
                 decision: WindowDecision) -> None:
        for frame, lld in zip(batch.frames, batch.llds):
            base = dict(window_start=frame.start_time,
                        quality_ok=frame.quality_ok, provenance="extract")
            self._append("raw_metrics", "intensity_db", lld.intensity_db, **base)
            self._append("raw_metrics", "spectral_flux", lld.spectral_flux, **base)
            if lld.f0 is not None:
                self._append("raw_metrics", "f0", lld.f0, **base)
            if lld.hnr_db is not None:
                self._append("raw_metrics", "hnr_db", lld.hnr_db, **base)
            if lld.snr_db is not None:
                self._append("raw_metrics", "snr_db", lld.snr_db, **base)

        for metric, value in sorted(window.metrics.items()):
            self._append("aggregated_metrics", metric, value, window.window_start,
                         window.quality_ok, "aggregate")
        self._append("aggregated_metrics", "voiced_fraction",
                     window.voiced_fraction, window.window_start,
                     window.quality_ok, "aggregate")

        if decision.status != SCORED:
            return
        for feature, z in decision.contextual.items():
            self._append("contextual_metrics", feature, z,
                         window.window_start, True, "link")
        for indicator, state in decision.indicators.items():
            start = window.window_start
            self._append("analyzed_metrics", f"indicator_{indicator}_score",
                         state.score, start, True, "link")
            self._append("analyzed_metrics", f"indicator_{indicator}_ema",
                         state.smoothed, start, True, "link")
            self._append("analyzed_metrics", f"indicator_{indicator}_coverage",
                         state.coverage, start, True, "link")
            self._append("analyzed_metrics", f"indicator_{indicator}_bit",
                         state.bit, start, True, "link")
        self._append("analyzed_metrics", "mdd_support", decision.support,
                     window.window_start, True, "link")
        self._append(
            "traces", "trace",
            {
                str(indicator): [
                    {k: v for k, v in asdict(row).items() if v is not None}
                    for row in rows
                ]
                for indicator, rows in decision.trace.items()
            },
            window.window_start, True, "link",
        )

    def _snapshot_baselines(self, reason: str) -> None:
        self._append(
            "baselines", "baseline_snapshot",
            {"reason": reason, "metrics": self.engine.baseline.snapshot()},
            float(self._snapshot_count), True, "link",
        )
        self._snapshot_count += 1


def _chunk_buffer(buf: SampleBuffer, chunk_seconds: float) -> Iterator[np.ndarray]:
    step = int(round(chunk_seconds * buf.sample_rate))
    for start in range(0, len(buf.samples), step):
        yield buf.samples[start:start + step]


def open_input(source: str | Path | bytes | SampleBuffer,
               stdin: BinaryIO | None = None) -> SampleBuffer:
    """Resolve a WAV path, raw WAV bytes, '-' (chunked stdin), or buffer."""
    if isinstance(source, SampleBuffer):
        return source
    if isinstance(source, bytes):
        return decode_pcm(source)
    if str(source) == "-":
        import sys

        stream = stdin if stdin is not None else sys.stdin.buffer
        parts = list(read_chunks(stream))
        samples = np.concatenate(parts) if parts else np.zeros(0)
        return SampleBuffer(samples=samples, sample_rate=CANONICAL_RATE)
    return decode_pcm(Path(source).read_bytes())


def run_stream(
    source: str | Path | bytes | SampleBuffer,
    data_dir: str | Path,
    config: str | Path | dict | MappingSpec | None = None,
    subject_id: str = "local",
    chunk_seconds: float = WINDOW_SECONDS,
    detector: VoiceDetector | None = None,
    stdin: BinaryIO | None = None,
) -> RunReport:
    """Process an input end-to-end, populating every collection."""
    spec = _resolve_spec(config)
    buf = open_input(source, stdin=stdin)
    store = MetricStore(data_dir)
    pipeline = StreamPipeline(spec, store, subject_id=subject_id)
    if detector is not None:
        pipeline.gate.detector = detector

    t0 = time.perf_counter()
    for chunk in _chunk_buffer(buf, chunk_seconds):
        pipeline.push(chunk)
    pipeline.finish(total_duration=buf.duration)
    pipeline.report.loop_wall_time = time.perf_counter() - t0
    store.close()
    return pipeline.report


def _resolve_spec(config) -> MappingSpec:
    if config is None:
        return default_spec()
    if isinstance(config, MappingSpec):
        return config
    return load_mapping_config(config)


@dataclass
class AnalysisReport:
    subjects: int = 0
    windows_scored: int = 0
    records_written: int = 0
    records_existing: int = 0
    corrupt_lines_skipped: int = 0


def run_analysis(
    data_dir: str | Path,
    config: str | Path | dict | MappingSpec | None = None,
) -> AnalysisReport:
    """Recompute indicator trajectories from stored contextual metrics.

    Replays the persisted standardized values through the same scoring
    path as the live stream and appends any analyzed records not already
    present, making the operation idempotent. Corrupt store lines are
    skipped and counted.
    """
    spec = _resolve_spec(config)
    store = MetricStore(data_dir)
    rows = store.query("contextual_metrics")
    if not rows:
        raise NoData("no contextual metrics in store")

    report = AnalysisReport(
        corrupt_lines_skipped=sum(
            store.skipped_lines(c)
            for c in ("contextual_metrics", "analyzed_metrics")
        )
    )
    writer = store.register_writer("analyzed_metrics", PIPELINE_WRITER)

    by_subject: dict[str, dict[float, dict[str, float | None]]] = {}
    for record in rows:
        by_subject.setdefault(record.subject_id, {}).setdefault(
            record.window_start, {}
        )[record.metric_name] = record.value

    def write(metric: str, value, subject: str, start: float) -> None:
        record = MetricRecord(
            collection="analyzed_metrics", subject_id=subject,
            metric_name=metric, value=value, window_start=start,
            quality_ok=True, provenance="link",
        )
        if store.has_key("analyzed_metrics", record):
            report.records_existing += 1
        else:
            store.append(writer, record)
            report.records_written += 1

    for subject in sorted(by_subject):
        report.subjects += 1
        engine = LinkageEngine(spec)
        for start in sorted(by_subject[subject]):
            contextual = {
                feature: by_subject[subject][start].get(feature)
                for feature in spec.features()
            }
            decision = engine.score_contextual(start, contextual)
            report.windows_scored += 1
            for indicator, state in decision.indicators.items():
                write(f"indicator_{indicator}_score", state.score, subject, start)
                write(f"indicator_{indicator}_ema", state.smoothed, subject, start)
                write(f"indicator_{indicator}_coverage", state.coverage, subject, start)
                write(f"indicator_{indicator}_bit", state.bit, subject, start)
            write("mdd_support", decision.support, subject, start)
    store.close()
    return report


@dataclass
class BenchmarkReport:
    runs: list[RunReport]

    def steady_timings(self) -> list[WindowTiming]:
        return [
            t for run in self.runs for t in run.timings
            if t.window_index >= STEADY_STATE_WINDOW
        ]

    @property
    def steady_state_rtf(self) -> float:
        steady = self.steady_timings()
        if not steady:
            return float("nan")
        return float(np.median([t.rtf for t in steady]))

    @property
    def warmup_excess(self) -> bool:
        """True when any pre-steady-state window ran slower than real time."""
        return any(
            t.rtf > 1.0
            for run in self.runs for t in run.timings
            if t.window_index < STEADY_STATE_WINDOW
        )

    def stage_timings(self) -> list[StageTiming]:
        return [
            st for run in self.runs for t in run.timings
            for st in t.as_stage_timings()
        ]

    def summary(self) -> dict:
        return {
            "runs": len(self.runs),
            "windows_per_run": self.runs[0].windows if self.runs else 0,
            "steady_state_rtf": self.steady_state_rtf,
            "real_time": bool(self.steady_state_rtf < 1.0),
            "warmup_excess": self.warmup_excess,
            "stage_medians": {
                stage: float(np.median([
                    t.stages.get(stage, 0.0)
                    for run in self.runs for t in run.timings
                ]))
                for stage in STAGES
            },
        }


def benchmark(
    source: str | Path | bytes | SampleBuffer,
    config: str | Path | dict | MappingSpec | None = None,
    runs: int = 1,
    data_dir: str | Path | None = None,
) -> BenchmarkReport:
    """Measure per-window, per-stage wall time over one or more full runs.

    Each run writes to a throwaway directory unless ``data_dir`` is given;
    steady state starts at window index 5.
    """
    import tempfile

    buf = open_input(source)
    reports = []
    for run_index in range(runs):
        if data_dir is None:
            with tempfile.TemporaryDirectory() as tmp:
                reports.append(run_stream(buf, tmp, config=config))
        else:
            target = Path(data_dir) / f"bench_run_{run_index}"
            reports.append(run_stream(buf, target, config=config))
    return BenchmarkReport(runs=reports)
