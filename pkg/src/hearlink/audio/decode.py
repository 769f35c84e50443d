"""WAV decoding and normalization to the canonical mono 16 kHz buffer."""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from ..errors import DecodeError, UnsupportedFormat

CANONICAL_RATE = 16000


@dataclass
class SampleBuffer:
    """Mono audio normalized to [-1, 1] at a known sample rate.

    ``origin_time`` is the stream-relative time (seconds) of the first
    sample; file input starts at 0.0.
    """

    samples: np.ndarray
    sample_rate: int = CANONICAL_RATE
    channel_count: int = 1
    origin_time: float = 0.0

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


def _parse_riff(data: bytes) -> tuple[dict, bytes]:
    if len(data) < 12:
        raise DecodeError("file too short for a RIFF header")
    if data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise DecodeError("not a RIFF/WAVE container")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos:pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8:pos + 8 + size]
        if chunk_id == b"fmt ":
            if len(body) < 16:
                raise DecodeError("fmt chunk truncated")
            tag, channels, rate, _, _, bits = struct.unpack_from("<HHIIHH", body, 0)
            fmt = {"tag": tag, "channels": channels, "rate": rate, "bits": bits}
        elif chunk_id == b"data":
            if len(body) < size:
                raise DecodeError("data chunk truncated")
            payload = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned

    if fmt is None or payload is None:
        raise DecodeError("missing fmt or data chunk")
    return fmt, payload


def _resample_linear(x: np.ndarray, src_rate: int, dst_rate: int) -> np.ndarray:
    if src_rate == dst_rate:
        return x
    out_len = int(round(len(x) * dst_rate / src_rate))
    if out_len <= 0:
        return np.zeros(0)
    positions = np.arange(out_len) * (src_rate / dst_rate)
    return np.interp(positions, np.arange(len(x)), x)


def decode_pcm(data: bytes, format_hint: str = "wav") -> SampleBuffer:
    """Decode a PCM16 WAV byte string into a mono 16 kHz SampleBuffer.

    Stereo input is downmixed by channel mean; other sample rates are
    resampled by linear interpolation. Raises ``DecodeError`` for broken
    containers and ``UnsupportedFormat`` for non-PCM16 encodings.
    """
    if format_hint not in ("wav", "riff"):
        raise UnsupportedFormat(f"unknown format hint: {format_hint!r}")
    fmt, payload = _parse_riff(data)

    if fmt["tag"] != 1:
        raise UnsupportedFormat(f"compression tag {fmt['tag']} is not PCM")
    if fmt["bits"] != 16:
        raise UnsupportedFormat(f"{fmt['bits']}-bit samples unsupported (need 16)")
    if fmt["channels"] not in (1, 2):
        raise UnsupportedFormat(f"{fmt['channels']} channels unsupported (mono/stereo)")
    if fmt["rate"] <= 0:
        raise DecodeError("non-positive sample rate")

    usable = len(payload) - (len(payload) % (2 * fmt["channels"]))
    raw = np.frombuffer(payload[:usable], dtype="<i2").astype(np.float64)
    raw /= 32768.0
    if fmt["channels"] == 2:
        raw = raw.reshape(-1, 2).mean(axis=1)

    samples = _resample_linear(raw, fmt["rate"], CANONICAL_RATE)
    np.clip(samples, -1.0, 1.0, out=samples)
    return SampleBuffer(samples=samples, sample_rate=CANONICAL_RATE, channel_count=1)


def encode_wav(samples: np.ndarray, sample_rate: int = CANONICAL_RATE) -> bytes:
    """Serialize [-1, 1] samples as a mono PCM16 WAV byte string."""
    pcm = np.clip(np.asarray(samples, dtype=np.float64), -1.0, 1.0)
    ints = np.round(pcm * 32767.0).astype("<i2")
    body = ints.tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(body), b"WAVE",
        b"fmt ", 16, 1, 1, sample_rate, sample_rate * 2, 2, 16,
        b"data", len(body),
    )
    return header + body
