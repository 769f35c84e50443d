"""Streaming PCM16 chunk input.

Wire format: each chunk is a 4-byte little-endian unsigned byte length
followed by that many bytes of little-endian PCM16, mono, 16 kHz. A zero
length marks end of stream. Chunks arrive over stdin (``-``) or a local
socket path.
"""

from __future__ import annotations

import socket
import struct
from typing import BinaryIO, Iterator

import numpy as np

from ..errors import DecodeError
from .decode import CANONICAL_RATE, SampleBuffer


def read_chunks(stream: BinaryIO) -> Iterator[np.ndarray]:
    """Yield float sample arrays from a length-prefixed PCM16 stream."""
    while True:
        header = stream.read(4)
        if not header:
            return
        if len(header) < 4:
            raise DecodeError("truncated chunk length prefix")
        (length,) = struct.unpack("<I", header)
        if length == 0:
            return
        if length % 2:
            raise DecodeError("chunk length must be a multiple of 2 (PCM16)")
        body = stream.read(length)
        if len(body) < length:
            raise DecodeError("truncated chunk body")
        yield np.frombuffer(body, dtype="<i2").astype(np.float64) / 32768.0


def write_chunk(stream: BinaryIO, samples: np.ndarray) -> None:
    """Encode samples as one length-prefixed PCM16 chunk."""
    ints = np.round(np.clip(samples, -1.0, 1.0) * 32767.0).astype("<i2")
    body = ints.tobytes()
    stream.write(struct.pack("<I", len(body)))
    stream.write(body)


def buffer_from_chunks(stream: BinaryIO) -> SampleBuffer:
    """Accumulate an entire chunk stream into one SampleBuffer."""
    parts = list(read_chunks(stream))
    if parts:
        samples = np.concatenate(parts)
    else:
        samples = np.zeros(0)
    return SampleBuffer(samples=samples, sample_rate=CANONICAL_RATE)


def read_socket_chunks(path: str) -> Iterator[np.ndarray]:
    """Accept one connection on a Unix socket and yield its chunks."""
    server = socket.socket(socket.AF_UNIX, socket.SOCK_STREAM)
    try:
        server.bind(path)
        server.listen(1)
        conn, _ = server.accept()
        with conn.makefile("rb") as stream:
            yield from read_chunks(stream)
    finally:
        server.close()
