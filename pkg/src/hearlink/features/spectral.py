"""Spectral flux and harmonics-to-noise ratio."""

from __future__ import annotations

import numpy as np

from .pitch import voicing_strength

HNR_MIN_DB = -20.0
HNR_MAX_DB = 40.0


def magnitude_spectrum(samples: np.ndarray) -> np.ndarray:
    return np.abs(np.fft.rfft(samples))


def spectral_flux(prev_spectrum: np.ndarray | None, spectrum: np.ndarray) -> float:
    """L2 norm of positive spectral magnitude increases, scaled by bin count.

    The first frame of a stream has no predecessor and scores 0 by
    convention.
    """
    if prev_spectrum is None:
        return 0.0
    rise = np.maximum(spectrum - prev_spectrum, 0.0)
    return float(np.linalg.norm(rise) / len(spectrum))


def hnr(samples: np.ndarray, sample_rate: int, f0: float | None) -> float | None:
    """Harmonics-to-noise ratio in dB at the frame's pitch lag.

    With r the periodic energy fraction from the autocorrelation peak,
    HNR = 10*log10(r / (1 - r)), clamped to [-20, 40] dB so pure tones and
    pure noise stay finite. Unpitched frames have no HNR.
    """
    if f0 is None:
        return None
    r = voicing_strength(samples, sample_rate, f0)
    if r <= 0.0:
        return HNR_MIN_DB
    if r >= 1.0:
        return HNR_MAX_DB
    value = 10.0 * np.log10(r / (1.0 - r))
    return float(np.clip(value, HNR_MIN_DB, HNR_MAX_DB))
