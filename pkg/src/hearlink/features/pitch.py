"""Fundamental frequency estimation by normalized autocorrelation."""

from __future__ import annotations

import numpy as np

F0_MIN = 60.0
F0_MAX = 500.0
VOICING_RATIO = 0.3         # ACF peak / lag-zero energy below this = unvoiced


def autocorrelation(x: np.ndarray) -> np.ndarray:
    """Linear (non-circular) autocorrelation via FFT, lags 0..len-1."""
    n = len(x)
    nfft = 1 << (2 * n - 1).bit_length()
    spec = np.fft.rfft(x, nfft)
    return np.fft.irfft(spec * np.conj(spec), nfft)[:n]


def _nccf_at(x: np.ndarray, lag: int, m: int) -> float:
    """Normalized cross-correlation of x[:m] against x shifted by lag."""
    n = len(x)
    if lag < 1 or lag + m > n:
        return 0.0
    a = x[:m]
    b = x[lag:lag + m]
    energy = np.dot(a, a) * np.dot(b, b)
    if energy <= 0:
        return 0.0
    return float(np.dot(a, b) / np.sqrt(energy))


def estimate_f0(
    samples: np.ndarray,
    sample_rate: int,
    fmin: float = F0_MIN,
    fmax: float = F0_MAX,
    voicing_ratio: float = VOICING_RATIO,
) -> float | None:
    """Estimate F0 in Hz, or None when the frame carries no usable pitch.

    The coarse period is the autocorrelation maximum inside the lag band,
    searched after the first zero crossing to skip the main lobe. The peak
    is then refined on a local normalized cross-correlation (removes the
    window-shortening tilt) with parabolic interpolation between lags.
    Frames whose peak-to-lag-zero ratio falls under ``voicing_ratio`` are
    unvoiced.
    """
    x = np.asarray(samples, dtype=np.float64)
    x = x - x.mean()
    n = len(x)
    if n < 8:
        return None

    acf = autocorrelation(x)
    if acf[0] <= 0:
        return None
    nacf = acf / acf[0]

    lag_min = int(np.ceil(sample_rate / fmax))
    lag_max = min(int(np.floor(sample_rate / fmin)), n - 2)
    if lag_min >= lag_max:
        return None

    nonpositive = np.nonzero(nacf[:lag_max + 1] <= 0)[0]
    start = max(lag_min, int(nonpositive[0])) if nonpositive.size else lag_min
    if start >= lag_max:
        return None

    lag = start + int(np.argmax(nacf[start:lag_max + 1]))
    if nacf[lag] < voicing_ratio or lag < 2:
        return None

    m = n - lag_max - 1
    if m < 4:
        return None

    # hill-climb the NCCF from the (bias-tilted) ACF peak
    for _ in range(8):
        here = _nccf_at(x, lag, m)
        left = _nccf_at(x, lag - 1, m)
        right = _nccf_at(x, lag + 1, m)
        if left > here and left >= right and lag - 1 >= 2:
            lag -= 1
        elif right > here and lag + 1 <= lag_max:
            lag += 1
        else:
            break

    left = _nccf_at(x, lag - 1, m)
    mid = _nccf_at(x, lag, m)
    right = _nccf_at(x, lag + 1, m)
    denom = left - 2 * mid + right
    if denom >= 0:
        delta = 0.0
    else:
        delta = float(np.clip(0.5 * (left - right) / denom, -1.0, 1.0))

    f0 = sample_rate / (lag + delta)
    if not (fmin <= f0 <= fmax):
        return None
    return f0


def voicing_strength(samples: np.ndarray, sample_rate: int, f0: float) -> float:
    """Normalized correlation at the period of ``f0``.

    Estimates the periodic fraction of frame energy via the NCCF peak,
    parabolically interpolated for non-integer periods; values near 1 mean
    a nearly pure harmonic frame. Used by the harmonics-to-noise measure.
    """
    x = np.asarray(samples, dtype=np.float64)
    x = x - x.mean()
    n = len(x)
    lag = int(round(sample_rate / f0))
    if lag < 2 or lag >= n - 4:
        return 0.0
    m = n - lag - 1
    vals = [_nccf_at(x, lag - 1, m), _nccf_at(x, lag, m), _nccf_at(x, lag + 1, m)]
    best = max(vals)
    denom = vals[0] - 2 * vals[1] + vals[2]
    if denom < 0:
        delta = 0.5 * (vals[0] - vals[2]) / denom
        if -1.0 <= delta <= 1.0:
            best = max(best, vals[1] - 0.25 * (vals[0] - vals[2]) * delta)
    return float(best)
