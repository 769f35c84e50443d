import numpy as np
import pytest

from hearlink.audio.decode import SampleBuffer
from hearlink.audio.framing import frame_signal

SR = 16000


def sine(freq: float, seconds: float, amplitude: float = 0.5,
         sr: int = SR, phase: float = 0.0) -> np.ndarray:
    t = np.arange(int(round(seconds * sr))) / sr
    return amplitude * np.sin(2 * np.pi * freq * t + phase)


def pulse_train(freq: float, seconds: float, amplitude: float = 1.0,
                sr: int = SR) -> np.ndarray:
    n = int(round(seconds * sr))
    x = np.zeros(n)
    period = int(round(sr / freq))
    x[::period] = amplitude
    return x


def buffer_of(samples: np.ndarray, sr: int = SR) -> SampleBuffer:
    return SampleBuffer(samples=np.asarray(samples, dtype=np.float64), sample_rate=sr)


def frames_of(samples: np.ndarray, sr: int = SR):
    return frame_signal(buffer_of(samples, sr))


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
