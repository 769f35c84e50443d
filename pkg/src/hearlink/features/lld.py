"""Per-frame low-level descriptor extraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..audio.framing import Frame
from .level import intensity
from .pitch import estimate_f0
from .spectral import hnr, magnitude_spectrum, spectral_flux


@dataclass
class FrameLLD:
    """Low-level descriptors for one frame.

    ``f0``, ``hnr_db`` and ``snr_db`` are None when undefined (unvoiced
    frame, or no unvoiced neighborhood for SNR). ``snr_db`` is filled in at
    window assembly, where the unvoiced neighborhood is known.
    """

    frame_index: int
    start_time: float
    voiced: bool
    quality_ok: bool
    intensity_db: float
    spectral_flux: float
    f0: float | None = None
    hnr_db: float | None = None
    snr_db: float | None = None


class LLDExtractor:
    """Stateful frame-by-frame extractor (keeps the previous spectrum)."""

    def __init__(self, sample_rate: int):
        self.sample_rate = sample_rate
        self._prev_spectrum: np.ndarray | None = None

    def process(self, frame: Frame) -> FrameLLD:
        spectrum = magnitude_spectrum(frame.samples)
        flux = spectral_flux(self._prev_spectrum, spectrum)
        self._prev_spectrum = spectrum

        f0 = None
        hnr_db = None
        if frame.voiced and frame.quality_ok:
            f0 = estimate_f0(frame.samples, self.sample_rate)
            hnr_db = hnr(frame.samples, self.sample_rate, f0)

        return FrameLLD(
            frame_index=frame.index,
            start_time=frame.start_time,
            voiced=frame.voiced,
            quality_ok=frame.quality_ok,
            intensity_db=intensity(frame.samples),
            spectral_flux=flux,
            f0=f0,
            hnr_db=hnr_db,
        )

    def reset(self) -> None:
        self._prev_spectrum = None
