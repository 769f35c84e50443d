"""Glottal pulse tracking and cycle-to-cycle perturbation measures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InsufficientPeriods

MIN_PITCHED_FRAMES = 3


@dataclass
class PeriodTrack:
    """Pulse instants with derived periods and per-period peak amplitudes.

    ``periods[i]`` is ``pulse_times[i+1] - pulse_times[i]``; ``amplitudes[i]``
    is the absolute waveform peak inside that period.
    """

    pulse_times: np.ndarray
    periods: np.ndarray
    amplitudes: np.ndarray

    @property
    def pulse_rate(self) -> float | None:
        if len(self.pulse_times) < 2:
            return None
        span = self.pulse_times[-1] - self.pulse_times[0]
        if span <= 0:
            return None
        return float(len(self.pulse_times) / span)


def track_pulses(
    samples: np.ndarray,
    sample_rate: int,
    f0_track: list[float | None],
    run_start_time: float = 0.0,
) -> PeriodTrack | None:
    """Locate pulse instants over one contiguous voiced run.

    ``samples`` spans the run; ``f0_track`` holds the per-frame pitch
    estimates inside it. Starting from the strongest peak, successive
    pulses are picked as waveform extrema inside a window around one median
    period ahead (and behind, for the run prefix). Runs with fewer than
    three pitched frames yield no track.
    """
    pitched = [f for f in f0_track if f is not None]
    if len(pitched) < MIN_PITCHED_FRAMES:
        return None

    x = np.asarray(samples, dtype=np.float64)
    period = sample_rate / float(np.median(pitched))
    if period < 2 or period >= len(x):
        return None

    # track the dominant polarity so sinusoids yield one pulse per cycle
    anchor = int(np.argmax(np.abs(x)))
    polarity = 1.0 if x[anchor] >= 0 else -1.0
    wave = polarity * x

    def best_peak(lo: int, hi: int) -> int | None:
        lo = max(lo, 0)
        hi = min(hi, len(wave))
        if hi - lo < 1:
            return None
        return lo + int(np.argmax(wave[lo:hi]))

    pulses = [anchor]
    # forward pass
    while True:
        center = pulses[-1] + period
        peak = best_peak(int(center - 0.3 * period), int(center + 0.3 * period) + 1)
        if peak is None or peak <= pulses[-1] or peak >= len(wave):
            break
        pulses.append(peak)
    # backward pass from the anchor
    while True:
        center = pulses[0] - period
        if center < -0.3 * period:
            break
        peak = best_peak(int(center - 0.3 * period), int(center + 0.3 * period) + 1)
        if peak is None or peak >= pulses[0]:
            break
        pulses.insert(0, peak)

    if len(pulses) < 2:
        return None

    pulse_idx = np.array(pulses, dtype=np.float64)
    pulse_times = run_start_time + pulse_idx / sample_rate
    periods = np.diff(pulse_times)
    amplitudes = np.array(
        [float(np.max(np.abs(x[pulses[i]:pulses[i + 1]]))) for i in range(len(pulses) - 1)]
    )
    return PeriodTrack(pulse_times=pulse_times, periods=periods, amplitudes=amplitudes)


def jitter(track: PeriodTrack) -> float:
    """Local jitter: mean absolute period difference over mean period."""
    if len(track.periods) < 2:
        raise InsufficientPeriods("jitter needs at least 2 periods")
    diffs = np.abs(np.diff(track.periods))
    return float(np.mean(diffs) / np.mean(track.periods))


def shimmer(track: PeriodTrack) -> float:
    """Local shimmer: mean absolute amplitude difference over mean amplitude."""
    if len(track.amplitudes) < 2:
        raise InsufficientPeriods("shimmer needs at least 2 amplitudes")
    diffs = np.abs(np.diff(track.amplitudes))
    return float(np.mean(diffs) / np.mean(track.amplitudes))
