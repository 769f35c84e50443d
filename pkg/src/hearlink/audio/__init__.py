from .decode import CANONICAL_RATE, SampleBuffer, decode_pcm, encode_wav
from .framing import Frame, frame_count, frame_length, frame_signal, hop_length
from .vad import EnergyVAD, VoicedSegment, vad_gate

__all__ = [
    "CANONICAL_RATE",
    "SampleBuffer",
    "decode_pcm",
    "encode_wav",
    "Frame",
    "frame_count",
    "frame_length",
    "frame_signal",
    "hop_length",
    "EnergyVAD",
    "VoicedSegment",
    "vad_gate",
]
