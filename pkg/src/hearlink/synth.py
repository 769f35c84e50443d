"""Deterministic speech-like test signal synthesis.

Generates harmonic, amplitude-modulated phrases whose pitch spread,
articulation rate, and pausing follow per-phase targets, so extractor
output orderings (e.g. pitch variability dropping in a flat phase) can be
asserted without any recorded corpus. Byte-identical for a fixed seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .audio.decode import CANONICAL_RATE, encode_wav
from .errors import ValidationError

NOISE_FLOOR = 0.0003            # ~ -70 dB ambient bed so the VAD floor is realistic
HARMONIC_AMPS = (1.0, 0.5, 0.25)


@dataclass
class SyntheticProfile:
    """Targets for one phase of a synthetic stream."""

    phase: str
    duration: float              # seconds of speech material (pauses add on top)
    f0_mean: float = 180.0
    f0_std: float = 25.0
    articulation: float = 4.0    # syllable cycles per second
    pause_rate: float = 2.0      # pauses per minute of speech
    pause_duration: float = 0.5  # seconds per pause
    level: float = 0.45          # peak amplitude

    def validate(self) -> None:
        if self.duration <= 0:
            raise ValidationError(f"{self.phase}: duration must be positive")
        if not 80.0 <= self.f0_mean <= 400.0:
            raise ValidationError(f"{self.phase}: f0_mean outside [80,400] Hz")
        if self.f0_std < 0:
            raise ValidationError(f"{self.phase}: negative f0_std")
        if self.articulation <= 0:
            raise ValidationError(f"{self.phase}: articulation must be positive")
        if self.pause_rate < 0 or self.pause_duration < 0:
            raise ValidationError(f"{self.phase}: negative pause target")
        if not 0 < self.level <= 0.9:
            raise ValidationError(f"{self.phase}: level outside (0, 0.9]")

    @classmethod
    def from_dict(cls, raw: dict) -> "SyntheticProfile":
        try:
            profile = cls(**raw)
        except TypeError as exc:
            raise ValidationError(f"bad profile fields: {exc}") from exc
        profile.validate()
        return profile


def three_phase_profiles(
    baseline_s: float = 120.0,
    depressed_s: float = 120.0,
    recovery_s: float = 120.0,
) -> list[SyntheticProfile]:
    """Baseline -> flattened/slowed -> recovered, the standard test sequence."""
    lively = dict(f0_mean=180.0, f0_std=28.0, articulation=4.2,
                  pause_rate=2.0, pause_duration=0.45)
    flat = dict(f0_mean=176.0, f0_std=5.0, articulation=2.4,
                pause_rate=7.0, pause_duration=1.1)
    return [
        SyntheticProfile(phase="baseline", duration=baseline_s, **lively),
        SyntheticProfile(phase="depressed", duration=depressed_s, **flat),
        SyntheticProfile(phase="recovery", duration=recovery_s, **lively),
    ]


def _phrase(
    rng: np.random.Generator,
    profile: SyntheticProfile,
    seconds: float,
    sample_rate: int,
) -> np.ndarray:
    """One continuous phrase: harmonic tone, per-syllable pitch, AM envelope."""
    n = int(round(seconds * sample_rate))
    t = np.arange(n) / sample_rate

    syllable = np.floor(t * profile.articulation).astype(int)
    n_syllables = int(syllable.max()) + 1 if n else 0
    f0_draws = rng.normal(profile.f0_mean, profile.f0_std, size=max(n_syllables, 1))
    f0_draws = np.clip(f0_draws, 80.0, 400.0)
    f0_per_sample = f0_draws[syllable]

    phase = 2.0 * np.pi * np.cumsum(f0_per_sample) / sample_rate
    wave = np.zeros(n)
    for k, amp in enumerate(HARMONIC_AMPS, start=1):
        wave += amp * np.sin(k * phase + rng.uniform(0, 2 * np.pi))
    wave /= sum(HARMONIC_AMPS)

    # syllable-rate loudness modulation; floor keeps phrases VAD-contiguous
    gains = rng.uniform(0.8, 1.0, size=max(n_syllables, 1))[syllable]
    envelope = 0.12 + 0.88 * 0.5 * (1.0 - np.cos(2.0 * np.pi * profile.articulation * t))
    return profile.level * gains * envelope * wave


def synth_stream(
    profiles: list[SyntheticProfile],
    seed: int = 0,
    sample_rate: int = CANONICAL_RATE,
) -> np.ndarray:
    """Render a profile sequence to samples: phrases with scheduled pauses."""
    if not profiles:
        raise ValidationError("need at least one profile")
    for profile in profiles:
        profile.validate()

    rng = np.random.default_rng(seed)
    parts: list[np.ndarray] = []
    for profile in profiles:
        if profile.pause_rate > 0:
            phrase_len = 60.0 / profile.pause_rate
        else:
            phrase_len = profile.duration
        remaining = profile.duration
        while remaining > 1e-9:
            chunk = min(phrase_len, remaining)
            parts.append(_phrase(rng, profile, chunk, sample_rate))
            remaining -= chunk
            if remaining > 1e-9 and profile.pause_rate > 0:
                pause = profile.pause_duration * rng.uniform(0.9, 1.1)
                parts.append(np.zeros(int(round(pause * sample_rate))))

    samples = np.concatenate(parts) if parts else np.zeros(0)
    samples = samples + NOISE_FLOOR * rng.standard_normal(len(samples))
    return np.clip(samples, -1.0, 1.0)


def synth_wav(
    profiles: list[SyntheticProfile],
    seed: int = 0,
    sample_rate: int = CANONICAL_RATE,
) -> bytes:
    return encode_wav(synth_stream(profiles, seed, sample_rate), sample_rate)


def load_profiles(source: str | Path) -> list[SyntheticProfile]:
    """Read a profile sequence from a JSON file or literal JSON text."""
    path = Path(source)
    text = path.read_text() if path.exists() else str(source)
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"profile document is not JSON: {exc}") from exc
    if isinstance(document, dict):
        document = document.get("phases", [])
    if not isinstance(document, list):
        raise ValidationError("profile document must be a list or {'phases': [...]}")
    return [SyntheticProfile.from_dict(raw) for raw in document]
