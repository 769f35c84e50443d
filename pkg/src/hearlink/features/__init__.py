from .level import intensity, snr_estimate
from .lld import FrameLLD, LLDExtractor
from .pitch import estimate_f0
from .pulses import PeriodTrack, jitter, shimmer, track_pulses
from .spectral import hnr, magnitude_spectrum, spectral_flux
from .timing import SegmentTempo, pause_stats, syllable_nuclei, tempo

__all__ = [
    "intensity",
    "snr_estimate",
    "FrameLLD",
    "LLDExtractor",
    "estimate_f0",
    "PeriodTrack",
    "jitter",
    "shimmer",
    "track_pulses",
    "hnr",
    "magnitude_spectrum",
    "spectral_flux",
    "SegmentTempo",
    "pause_stats",
    "syllable_nuclei",
    "tempo",
]
