"""Hypothesis-testing primitives: Pearson r, BH-FDR, Cohen's d."""

from __future__ import annotations

import math

import numpy as np
from scipy import stats as sps

from ..errors import DegenerateInput, InsufficientData, ValidationError


def pearson(x, y) -> tuple[float, float]:
    """Sample Pearson correlation with a two-sided t-test p-value.

    p comes from t = r*sqrt((n-2)/(1-r^2)) against the t distribution with
    n-2 degrees of freedom. Needs n >= 3 and nonzero variance on both
    sides.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) != len(y):
        raise DegenerateInput("x and y must have equal length")
    n = len(x)
    if n < 3:
        raise InsufficientData(f"need at least 3 pairs, got {n}")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateInput("zero variance input")
    r = float(np.dot(dx, dy) / math.sqrt(sxx * syy))
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        return r, 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    p = 2.0 * float(sps.t.sf(abs(t), n - 2))
    return r, min(p, 1.0)


def spearman(x, y) -> tuple[float, float]:
    """Spearman rho via rank transform, p from the same t approximation."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return pearson(sps.rankdata(x), sps.rankdata(y))


def bh_fdr(pvals, alpha: float = 0.05) -> tuple[list[bool], list[float]]:
    """Benjamini-Hochberg step-up over one family of p-values.

    Rejects all hypotheses up to k* = max{i : p_(i) <= i*alpha/m} in the
    sorted order. Adjusted values are q_(i) = min_{j>=i} m*p_(j)/j capped
    at 1, reported in the input order.
    """
    p = np.asarray(list(pvals), dtype=np.float64)
    if p.size and (np.min(p) < 0.0 or np.max(p) > 1.0):
        raise ValidationError("p-values must lie in [0,1]")
    m = p.size
    if m == 0:
        return [], []
    order = np.argsort(p, kind="stable")
    ranked = p[order]

    k_star = 0
    for i in range(m):
        if ranked[i] <= (i + 1) * alpha / m:
            k_star = i + 1

    q_sorted = np.minimum.accumulate((m * ranked / np.arange(1, m + 1))[::-1])[::-1]
    q_sorted = np.minimum(q_sorted, 1.0)

    reject = [False] * m
    q = [0.0] * m
    for rank, idx in enumerate(order):
        reject[idx] = rank < k_star
        q[idx] = float(q_sorted[rank])
    return reject, q


def cohens_d(group_a, group_b) -> float:
    """Standardized mean difference; positive means higher in ``group_a``.

    Uses the pooled sample standard deviation. Equal groups give 0; a zero
    pooled spread with unequal means is reported as an infinite effect.
    """
    a = np.asarray(group_a, dtype=np.float64)
    b = np.asarray(group_b, dtype=np.float64)
    if len(a) < 2 or len(b) < 2:
        raise InsufficientData("each group needs at least 2 observations")
    na, nb = len(a), len(b)
    var_a = float(np.var(a, ddof=1))
    var_b = float(np.var(b, ddof=1))
    pooled = math.sqrt(((na - 1) * var_a + (nb - 1) * var_b) / (na + nb - 2))
    diff = float(a.mean() - b.mean())
    if pooled == 0.0:
        if diff == 0.0:
            return 0.0
        return math.copysign(math.inf, diff)
    return diff / pooled


def stratify(effect_sizes: dict[str, float], d_threshold: float = 0.2) -> dict[str, str]:
    """Per-feature test plan from gender effect sizes.

    Features whose |d| stays at or under the threshold are tested pooled;
    larger gender effects force stratified testing. The boundary itself is
    pooled (negligible-effect convention).
    """
    return {
        feature: "pooled" if abs(d) <= d_threshold else "by_gender"
        for feature, d in effect_sizes.items()
    }
