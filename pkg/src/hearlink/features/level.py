"""Frame intensity and window-level signal-to-noise estimates."""

from __future__ import annotations

import numpy as np


def intensity(samples: np.ndarray) -> float:
    """Frame intensity in dB relative to full scale: 10*log10(mean square)."""
    return float(10.0 * np.log10(np.mean(np.square(samples)) + 1e-12))


def snr_estimate(
    voiced_db: list[float] | np.ndarray,
    unvoiced_db: list[float] | np.ndarray,
) -> float | None:
    """Mean voiced intensity minus mean unvoiced intensity (dB).

    Returns None when either side is empty; the coverage machinery treats
    the metric as absent for that window.
    """
    if len(voiced_db) == 0 or len(unvoiced_db) == 0:
        return None
    return float(np.mean(voiced_db) - np.mean(unvoiced_db))
