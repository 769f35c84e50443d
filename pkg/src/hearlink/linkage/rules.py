"""Scoring chain primitives: standardize, direct, score, smooth, binarize, count.

Every step is a pure function so stored intermediate values can be
replayed to reproduce any published score exactly.
"""

from __future__ import annotations

from ..errors import MissingBaseline


def standardize(
    x: float,
    mu: float | None,
    sigma: float | None,
    tau: float,
    epsilon: float = 1e-6,
) -> float:
    """Baseline z-score with symmetric clipping.

    z = (x - mu) / max(sigma, epsilon), then the absolute value is capped
    at ``tau`` while keeping the sign. Raises ``MissingBaseline`` when the
    metric has no calibrated baseline yet.
    """
    if mu is None or sigma is None:
        raise MissingBaseline("metric has no baseline")
    z = (x - mu) / max(sigma, epsilon)
    if z > tau:
        return tau
    if z < -tau:
        return -tau
    return z


def apply_direction(z: float, direction: str) -> float:
    """Direction modifier: positive keeps z, negative flips it, both takes |z|."""
    if direction == "positive":
        return z
    if direction == "negative":
        return -z
    return abs(z)


def indicator_score(
    contributions: list[tuple[float, float]],
    total_weight: float,
) -> tuple[float | None, float]:
    """Weight-normalized indicator score with coverage.

    ``contributions`` holds (psi, weight) for the mapped features observed
    this window; ``total_weight`` is the weight sum over *all* mapped
    features. Returns (score, coverage); the score is None at zero
    coverage.
    """
    available = sum(w for _, w in contributions)
    if total_weight <= 0 or available <= 0:
        return None, 0.0
    score = sum(psi * w for psi, w in contributions) / available
    coverage = available / total_weight
    return score, coverage


def ema_update(current: float, previous: float | None, beta: float) -> float:
    """Exponential moving average: (1-beta)*current + beta*previous.

    The first observation initializes the average to itself.
    """
    if previous is None:
        return current
    return (1.0 - beta) * current + beta * previous


def binarize(smoothed: float | None, theta: float) -> int:
    """Presence bit: 1 when the smoothed score reaches the threshold."""
    if smoothed is None:
        return 0
    return 1 if smoothed >= theta else 0


def mdd_support(bits: dict[int, int]) -> int:
    """Count-of-nine support rule.

    Fires only when at least five of the nine indicators are present AND
    one of them is (1) depressed mood or (2) loss of interest. This is an
    evidence flag, not a diagnosis.
    """
    total = sum(bits.get(i, 0) for i in range(1, 10))
    anchored = bits.get(1, 0) == 1 or bits.get(2, 0) == 1
    return 1 if (total >= 5 and anchored) else 0
