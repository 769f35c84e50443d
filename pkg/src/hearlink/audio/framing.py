"""Fixed 25 ms / 10 ms hop analysis framing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decode import SampleBuffer

FRAME_SECONDS = 0.025
HOP_SECONDS = 0.010
CLIP_LEVEL = 0.999          # |sample| at or above this counts as clipped
MAX_CLIP_RATIO = 0.01


@dataclass
class Frame:
    """One analysis window over the source buffer.

    ``samples`` is a view into the decoded buffer; ``start_sample`` anchors
    the frame so segment-level extractors can slice the original signal.
    """

    samples: np.ndarray
    index: int
    start_time: float
    start_sample: int
    voiced: bool = False
    quality_ok: bool = True


def frame_length(sample_rate: int) -> int:
    return int(round(FRAME_SECONDS * sample_rate))


def hop_length(sample_rate: int) -> int:
    return int(round(HOP_SECONDS * sample_rate))


def frame_count(n_samples: int, sample_rate: int) -> int:
    """Closed-form frame count: floor((N - L) / H) + 1, zero below one frame."""
    length = frame_length(sample_rate)
    hop = hop_length(sample_rate)
    if n_samples < length:
        return 0
    return (n_samples - length) // hop + 1


class StreamingFramer:
    """Incremental framer: feeds arbitrary sample chunks, emits whole frames.

    Keeps the unconsumed tail between pushes so frames that straddle chunk
    boundaries come out intact, with stream-global indices and times.
    """

    def __init__(self, sample_rate: int, origin_time: float = 0.0):
        self.sample_rate = sample_rate
        self.origin_time = origin_time
        self._tail = np.zeros(0)
        self._next_index = 0

    def push(self, samples: np.ndarray) -> list[Frame]:
        data = np.concatenate([self._tail, np.asarray(samples, dtype=np.float64)])
        length = frame_length(self.sample_rate)
        hop = hop_length(self.sample_rate)
        count = frame_count(len(data), self.sample_rate)
        frames: list[Frame] = []
        for i in range(count):
            start = i * hop
            window = data[start:start + length]
            clip_ratio = float(np.mean(np.abs(window) >= CLIP_LEVEL))
            index = self._next_index + i
            frames.append(
                Frame(
                    samples=window,
                    index=index,
                    start_time=self.origin_time + index * hop / self.sample_rate,
                    start_sample=index * hop,
                    quality_ok=clip_ratio <= MAX_CLIP_RATIO,
                )
            )
        consumed = count * hop
        self._tail = data[consumed:]
        self._next_index += count
        return frames


def frame_signal(buf: SampleBuffer, index_offset: int = 0) -> list[Frame]:
    """Split a buffer into frames; a trailing partial frame is discarded.

    A buffer shorter than one frame yields an empty list (not an error).
    Frames are flagged ``quality_ok=False`` when more than 1% of their
    samples sit at full scale (clipping).
    """
    length = frame_length(buf.sample_rate)
    hop = hop_length(buf.sample_rate)
    count = frame_count(len(buf.samples), buf.sample_rate)
    frames: list[Frame] = []
    for i in range(count):
        start = i * hop
        window = buf.samples[start:start + length]
        clip_ratio = float(np.mean(np.abs(window) >= CLIP_LEVEL))
        frames.append(
            Frame(
                samples=window,
                index=index_offset + i,
                start_time=buf.origin_time + (index_offset + i) * hop / buf.sample_rate,
                start_sample=start,
                quality_ok=clip_ratio <= MAX_CLIP_RATIO,
            )
        )
    return frames
