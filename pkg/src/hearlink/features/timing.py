"""Pause and tempo statistics over voiced segments."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from ..audio.vad import VoicedSegment

MIN_PAUSE_SECONDS = 0.3
NUCLEUS_PROMINENCE_DB = 2.0
NUCLEUS_MIN_SPACING_S = 0.1


@dataclass
class SegmentTempo:
    speech_rate: float            # syllable nuclei per second of window time
    articulation_rate: float      # nuclei per second of voiced time
    pause_durations: list[float] = field(default_factory=list)
    pause_frequency: float = 0.0  # pauses per minute


def pause_stats(
    segments: list[VoicedSegment],
    window_seconds: float,
) -> tuple[float | None, float] | None:
    """Mean pause duration and pauses/minute within a window.

    A pause is a gap of at least ``MIN_PAUSE_SECONDS`` between consecutive
    voiced segments; leading and trailing silence is not a pause. Returns
    None when the window holds no segments, and ``(None, 0.0)`` when
    segments exist but no gap reaches the pause threshold.
    """
    if not segments:
        return None
    gaps = [
        later.start_time - earlier.end_time
        for earlier, later in zip(segments, segments[1:])
    ]
    pauses = [g for g in gaps if g >= MIN_PAUSE_SECONDS]
    frequency = len(pauses) / window_seconds * 60.0
    if not pauses:
        return None, frequency
    return float(np.mean(pauses)), frequency


def syllable_nuclei(intensity_db: np.ndarray, hop_seconds: float) -> int:
    """Count intensity peaks prominent enough to pass as syllable nuclei."""
    if len(intensity_db) < 3:
        return 0
    min_spacing = max(1, int(round(NUCLEUS_MIN_SPACING_S / hop_seconds)))
    peaks, _ = find_peaks(
        intensity_db, prominence=NUCLEUS_PROMINENCE_DB, distance=min_spacing
    )
    return int(len(peaks))


def tempo(
    segments: list[VoicedSegment],
    segment_intensities: list[np.ndarray],
    window_seconds: float,
    hop_seconds: float,
    pauses: tuple[float | None, float] | None = None,
) -> SegmentTempo | None:
    """Speech and articulation rates from syllable nuclei.

    ``segment_intensities[k]`` is the per-frame intensity track (dB) of
    ``segments[k]``. Nuclei are counted inside voiced segments only; the
    speech rate divides by the whole window, the articulation rate by
    voiced time alone.
    """
    if not segments:
        return None
    voiced_time = sum(s.duration for s in segments)
    if voiced_time <= 0:
        return None
    nuclei = sum(
        syllable_nuclei(track, hop_seconds) for track in segment_intensities
    )
    result = SegmentTempo(
        speech_rate=nuclei / window_seconds,
        articulation_rate=nuclei / voiced_time,
    )
    if pauses is not None:
        mean_pause, frequency = pauses
        if mean_pause is not None:
            result.pause_durations = [mean_pause]
        result.pause_frequency = frequency
    return result
