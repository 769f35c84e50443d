"""Aggregation of frame LLDs into fixed 10 s high-level descriptor windows."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .audio.framing import Frame
from .audio.vad import VoicedSegment, segments_from_flags
from .errors import StreamOrderError
from .features.lld import FrameLLD
from .features.pulses import PeriodTrack, jitter, shimmer, track_pulses
from .features.timing import SegmentTempo, pause_stats, tempo

WINDOW_SECONDS = 10.0
MIN_VOICED_FRACTION = 0.1

HLD_METRICS = (
    "f0_avg", "f0_std", "f0_range",
    "intensity_std", "intensity_range",
    "jitter", "shimmer", "hnr", "snr",
    "spectral_flux_mean",
    "pause_duration", "pause_frequency",
    "speech_rate", "articulation_rate",
    "glottal_pulse_rate",
)


@dataclass
class HLDWindow:
    """Functionals of one 10 s span; absent metrics are omitted, not zeroed."""

    window_start: float
    window_len: float
    metrics: dict[str, float]
    voiced_fraction: float
    quality_ok: bool


@dataclass
class PerturbationSummary:
    jitter: float | None = None
    shimmer: float | None = None
    glottal_pulse_rate: float | None = None


def _functionals(values: list[float], prefix: str, out: dict[str, float]) -> None:
    if not values:
        return
    arr = np.asarray(values, dtype=np.float64)
    out[f"{prefix}_avg" if prefix == "f0" else f"{prefix}_mean"] = float(arr.mean())
    out[f"{prefix}_std"] = float(arr.std())
    out[f"{prefix}_range"] = float(arr.max() - arr.min())


def aggregate_window(
    window_start: float,
    llds: list[FrameLLD],
    tempo_result: SegmentTempo | None,
    pauses: tuple[float | None, float] | None,
    perturbation: PerturbationSummary | None = None,
    window_len: float = WINDOW_SECONDS,
) -> HLDWindow:
    """Reduce one window of LLDs to high-level descriptors.

    Functionals run over voiced, quality-ok frames only; a window with no
    voiced frames comes back with empty metrics and ``quality_ok=False``.
    """
    metrics: dict[str, float] = {}
    total = len(llds)
    usable = [l for l in llds if l.voiced and l.quality_ok]
    voiced_fraction = (sum(1 for l in llds if l.voiced) / total) if total else 0.0

    f0_values = [l.f0 for l in usable if l.f0 is not None]
    if f0_values:
        arr = np.asarray(f0_values)
        metrics["f0_avg"] = float(arr.mean())
        metrics["f0_std"] = float(arr.std())
        metrics["f0_range"] = float(arr.max() - arr.min())

    if usable:
        level = np.asarray([l.intensity_db for l in usable])
        metrics["intensity_std"] = float(level.std())
        metrics["intensity_range"] = float(level.max() - level.min())
        metrics["spectral_flux_mean"] = float(
            np.mean([l.spectral_flux for l in usable])
        )

    hnr_values = [l.hnr_db for l in usable if l.hnr_db is not None]
    if hnr_values:
        metrics["hnr"] = float(np.mean(hnr_values))

    unvoiced_db = [l.intensity_db for l in llds if not l.voiced and l.quality_ok]
    if usable and unvoiced_db:
        noise = float(np.mean(unvoiced_db))
        metrics["snr"] = float(np.mean([l.intensity_db for l in usable]) - noise)
        for l in llds:
            if l.voiced and l.quality_ok:
                l.snr_db = l.intensity_db - noise

    if perturbation is not None:
        if perturbation.jitter is not None:
            metrics["jitter"] = perturbation.jitter
        if perturbation.shimmer is not None:
            metrics["shimmer"] = perturbation.shimmer
        if perturbation.glottal_pulse_rate is not None:
            metrics["glottal_pulse_rate"] = perturbation.glottal_pulse_rate

    if pauses is not None:
        mean_pause, frequency = pauses
        if mean_pause is not None:
            metrics["pause_duration"] = mean_pause
        metrics["pause_frequency"] = frequency

    if tempo_result is not None:
        metrics["speech_rate"] = tempo_result.speech_rate
        metrics["articulation_rate"] = tempo_result.articulation_rate

    return HLDWindow(
        window_start=window_start,
        window_len=window_len,
        metrics=metrics,
        voiced_fraction=voiced_fraction,
        quality_ok=voiced_fraction >= MIN_VOICED_FRACTION,
    )


def _run_samples(frames: list[Frame], hop: int) -> np.ndarray:
    """Reassemble a contiguous run from overlapping frames (hop-exact)."""
    if len(frames) == 1:
        return np.asarray(frames[0].samples)
    parts = [np.asarray(f.samples[:hop]) for f in frames[:-1]]
    parts.append(np.asarray(frames[-1].samples))
    return np.concatenate(parts)


def summarize_perturbation(
    frames: list[Frame],
    llds: list[FrameLLD],
    sample_rate: int,
) -> PerturbationSummary:
    """Pulse-level jitter/shimmer/pulse-rate over the window's voiced runs.

    Each contiguous voiced run with at least three pitched frames is
    tracked independently; runs are combined by difference-count-weighted
    means so long runs dominate.
    """
    hop = int(round(0.010 * sample_rate))
    by_index = {l.frame_index: l for l in llds}

    runs: list[list[Frame]] = []
    current: list[Frame] = []
    for frame in frames:
        if frame.voiced and frame.quality_ok:
            current.append(frame)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)

    jitters: list[tuple[float, float]] = []
    shimmers: list[tuple[float, float]] = []
    total_pulses = 0
    tracked_time = 0.0
    for run in runs:
        f0_track = [by_index[f.index].f0 if f.index in by_index else None for f in run]
        track = track_pulses(
            _run_samples(run, hop), sample_rate, f0_track,
            run_start_time=run[0].start_time,
        )
        if track is None:
            continue
        if len(track.periods) >= 2:
            jitters.append((jitter(track), len(track.periods) - 1))
        if len(track.amplitudes) >= 2:
            shimmers.append((shimmer(track), len(track.amplitudes) - 1))
        total_pulses += len(track.pulse_times)
        tracked_time += (len(run) - 1) * hop / sample_rate + 0.025

    summary = PerturbationSummary()
    if jitters:
        weights = sum(w for _, w in jitters)
        summary.jitter = sum(v * w for v, w in jitters) / weights
    if shimmers:
        weights = sum(w for _, w in shimmers)
        summary.shimmer = sum(v * w for v, w in shimmers) / weights
    if total_pulses and tracked_time > 0:
        summary.glottal_pulse_rate = total_pulses / tracked_time
    return summary


def assemble_window(
    window_start: float,
    frames: list[Frame],
    llds: list[FrameLLD],
    sample_rate: int,
    window_len: float = WINDOW_SECONDS,
) -> HLDWindow:
    """Full window build: segments, pauses, tempo, perturbation, functionals."""
    segments = segments_from_flags(frames)
    pauses = pause_stats(segments, window_len)
    hop_seconds = 0.010
    intensity_tracks = []
    by_index = {l.frame_index: l for l in llds}
    for segment in segments:
        track = [
            by_index[i].intensity_db
            for i in segment.frame_indices
            if i in by_index
        ]
        intensity_tracks.append(np.asarray(track))
    tempo_result = tempo(segments, intensity_tracks, window_len, hop_seconds, pauses)
    perturbation = summarize_perturbation(frames, llds, sample_rate)
    return aggregate_window(
        window_start, llds, tempo_result, pauses, perturbation, window_len
    )


@dataclass
class WindowBatch:
    """Raw materials of one complete window, before functional reduction."""

    window_start: float
    frames: list[Frame]
    llds: list[FrameLLD]


class WindowBatcher:
    """Groups a timestamped frame/LLD stream into back-to-back 10 s batches.

    A batch is released once a frame at or past its end arrives (or at
    ``close`` when the stream provably covers it). Trailing partial
    windows are held, never released.
    """

    def __init__(self, window_len: float = WINDOW_SECONDS):
        self.window_len = window_len
        self._frames: list[Frame] = []
        self._llds: list[FrameLLD] = []
        self._window_index = 0
        self._last_time: float | None = None

    def _window_start(self) -> float:
        return self._window_index * self.window_len

    def push(self, frame: Frame, lld: FrameLLD) -> list[WindowBatch]:
        if self._last_time is not None and frame.start_time < self._last_time:
            raise StreamOrderError(
                f"frame at {frame.start_time:.3f}s after {self._last_time:.3f}s"
            )
        self._last_time = frame.start_time
        released: list[WindowBatch] = []
        while frame.start_time >= self._window_start() + self.window_len:
            released.append(self._release())
        self._frames.append(frame)
        self._llds.append(lld)
        return released

    def _release(self) -> WindowBatch:
        batch = WindowBatch(self._window_start(), self._frames, self._llds)
        self._frames = []
        self._llds = []
        self._window_index += 1
        return batch

    def close(self, total_duration: float | None = None) -> list[WindowBatch]:
        """Release windows fully covered by the stream; drop the partial tail."""
        released = []
        if total_duration is not None:
            while self._window_start() + self.window_len <= total_duration + 1e-9:
                released.append(self._release())
        return released


class WindowStream:
    """Convenience: frame/LLD stream in, assembled HLD windows out."""

    def __init__(self, sample_rate: int, window_len: float = WINDOW_SECONDS):
        self.sample_rate = sample_rate
        self.window_len = window_len
        self._batcher = WindowBatcher(window_len)

    def _assemble(self, batch: WindowBatch) -> HLDWindow:
        return assemble_window(
            batch.window_start, batch.frames, batch.llds,
            self.sample_rate, self.window_len,
        )

    def push(self, frame: Frame, lld: FrameLLD) -> list[HLDWindow]:
        return [self._assemble(b) for b in self._batcher.push(frame, lld)]

    def close(self, total_duration: float | None = None) -> list[HLDWindow]:
        return [self._assemble(b) for b in self._batcher.close(total_duration)]
