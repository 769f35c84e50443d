"""Voice activity gating: energy/ZCR detector with hangover merging.

The built-in detector compares per-frame log energy against an adaptive
noise floor (exponential minimum tracker) and rejects broadband frames via
a zero-crossing-rate ceiling. Any object with the same ``classify``
signature (e.g. a neural VAD wrapper) can be substituted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .framing import Frame, FRAME_SECONDS

HANGOVER_FRAMES = 3         # voiced runs separated by < 3 unvoiced frames merge
ENERGY_FLOOR_DB = -120.0


def frame_energy_db(samples: np.ndarray) -> float:
    return float(10.0 * np.log10(np.mean(np.square(samples)) + 1e-12))


def zero_crossing_rate(samples: np.ndarray) -> float:
    if len(samples) < 2:
        return 0.0
    signs = np.signbit(samples)
    return float(np.count_nonzero(signs[1:] != signs[:-1])) / (len(samples) - 1)


class VoiceDetector(Protocol):
    """Pluggable per-frame speech/non-speech classifier, stateful per stream."""

    def classify(self, frames: Sequence[Frame]) -> list[bool]:
        ...


class EnergyVAD:
    """Log-energy gate over an adaptive noise-floor estimate.

    A frame is voiced when its energy clears both the absolute minimum and
    the tracked floor plus ``margin_db``, and its zero-crossing rate stays
    under ``zcr_ceiling``. The floor drops instantly on quieter frames and
    recovers with a slow exponential pull toward the current energy, so
    short pauses re-arm the gate without sustained speech raising it.

    Passing ``fixed_floor_db`` freezes adaptation (used for the
    monotonicity property: at a fixed floor, gaining a signal up can never
    silence a voiced frame).
    """

    def __init__(
        self,
        margin_db: float = 6.0,
        min_energy_db: float = -55.0,
        zcr_ceiling: float = 0.25,
        floor_rise_rate: float = 0.002,
        fixed_floor_db: float | None = None,
    ):
        self.margin_db = margin_db
        self.min_energy_db = min_energy_db
        self.zcr_ceiling = zcr_ceiling
        self.floor_rise_rate = floor_rise_rate
        self.fixed_floor_db = fixed_floor_db
        self._floor_db = fixed_floor_db if fixed_floor_db is not None else -80.0

    def classify(self, frames: Sequence[Frame]) -> list[bool]:
        flags = []
        for frame in frames:
            energy = frame_energy_db(frame.samples)
            if self.fixed_floor_db is None:
                if energy < self._floor_db:
                    self._floor_db = energy
                else:
                    self._floor_db += self.floor_rise_rate * (energy - self._floor_db)
            voiced = (
                energy >= self.min_energy_db
                and energy >= self._floor_db + self.margin_db
                and zero_crossing_rate(frame.samples) <= self.zcr_ceiling
            )
            flags.append(voiced)
        return flags


@dataclass
class VoicedSegment:
    """A maximal run of voiced frames after hangover merging."""

    start_time: float
    end_time: float
    frame_indices: range

    @property
    def duration(self) -> float:
        return self.end_time - self.start_time


def merge_hangover(flags: list[bool], hangover: int = HANGOVER_FRAMES) -> list[bool]:
    """Mark gaps shorter than ``hangover`` frames between voiced runs as voiced."""
    merged = list(flags)
    gap_start = None
    seen_voiced = False
    for i, voiced in enumerate(flags):
        if voiced:
            if seen_voiced and gap_start is not None and i - gap_start < hangover:
                for j in range(gap_start, i):
                    merged[j] = True
            gap_start = None
            seen_voiced = True
        elif gap_start is None:
            gap_start = i
    return merged


def segments_from_flags(frames: Sequence[Frame]) -> list[VoicedSegment]:
    """Build non-overlapping time-ordered segments from per-frame voiced flags."""
    segments: list[VoicedSegment] = []
    run_start = None
    for pos, frame in enumerate(frames):
        if frame.voiced and run_start is None:
            run_start = pos
        elif not frame.voiced and run_start is not None:
            segments.append(_segment(frames, run_start, pos - 1))
            run_start = None
    if run_start is not None:
        segments.append(_segment(frames, run_start, len(frames) - 1))
    return segments


def _segment(frames: Sequence[Frame], first: int, last: int) -> VoicedSegment:
    return VoicedSegment(
        start_time=frames[first].start_time,
        end_time=frames[last].start_time + FRAME_SECONDS,
        frame_indices=range(frames[first].index, frames[last].index + 1),
    )


class StreamingGate:
    """Hangover-aware streaming wrapper around a detector.

    Frames come back in order with final voiced flags; an unvoiced frame is
    held for up to ``HANGOVER_FRAMES - 1`` successors in case a returning
    voiced run bridges the gap. Produces exactly the flags of the batch
    ``vad_gate`` on the same input.
    """

    def __init__(self, detector: VoiceDetector | None = None,
                 hangover: int = HANGOVER_FRAMES):
        self.detector = detector or EnergyVAD()
        self.hangover = hangover
        self._gap: list[Frame] = []
        self._in_speech = False

    def push(self, frames: Sequence[Frame]) -> list[Frame]:
        finalized: list[Frame] = []
        for frame, raw in zip(frames, self.detector.classify(frames)):
            if raw:
                for held in self._gap:
                    held.voiced = True      # gap < hangover: bridge it
                    finalized.append(held)
                self._gap = []
                frame.voiced = True
                finalized.append(frame)
                self._in_speech = True
            elif self._in_speech:
                frame.voiced = False
                self._gap.append(frame)
                if len(self._gap) >= self.hangover:
                    finalized.extend(self._gap)
                    self._gap = []
                    self._in_speech = False
            else:
                frame.voiced = False
                finalized.append(frame)
        return finalized

    def flush(self) -> list[Frame]:
        held, self._gap = self._gap, []
        self._in_speech = False
        return held


def vad_gate(
    frames: Sequence[Frame],
    detector: VoiceDetector | None = None,
) -> tuple[list[Frame], list[VoicedSegment]]:
    """Flag voiced frames and merge them into segments.

    Runs separated by fewer than ``HANGOVER_FRAMES`` unvoiced frames are
    merged, and the bridged frames are flagged voiced so that the union of
    segment frames equals the voiced-frame set. Empty input yields empty
    output.
    """
    frames = list(frames)
    if not frames:
        return [], []
    detector = detector or EnergyVAD()
    flags = merge_hangover(detector.classify(frames))
    for frame, voiced in zip(frames, flags):
        frame.voiced = voiced
    return frames, segments_from_flags(frames)
