"""Stateful linkage engine: baselines, indicator smoothing, and the count rule.

One engine instance serves one subject stream. Windows flow through
standardize -> direction -> weighted score -> EMA -> binarize -> count;
every intermediate value is captured in a per-window trace so scores can
be recomputed from storage bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from ..aggregate import HLDWindow
from ..errors import ValidationError
from .config import MappingSpec
from .rules import apply_direction, binarize, ema_update, indicator_score, mdd_support, standardize

# PHQ item -> DSM-5 indicator, the ground-truth linkage used for recalibration
PHQ_TO_INDICATOR = {
    "Q1": 2, "Q2": 1, "Q3": 4, "Q4": 6, "Q5": 3,
    "Q6": 7, "Q7": 5, "Q8": 8, "Q9": 9,
}

WARMUP = "warmup"
SCORED = "scored"
LOW_QUALITY = "low_quality"


@dataclass
class MetricBaseline:
    """Running mean/variance for one metric (Welford accumulators)."""

    mu: float = 0.0
    m2: float = 0.0
    count: int = 0
    last_update: str | None = None

    @property
    def sigma(self) -> float:
        if self.count <= 0:
            return 0.0
        return math.sqrt(self.m2 / self.count)

    def add(self, x: float) -> None:
        self.count += 1
        delta = x - self.mu
        self.mu += delta / self.count
        self.m2 += delta * (x - self.mu)


class BaselineProfile:
    """Per-metric baseline (mu, sigma) with update counters."""

    def __init__(self):
        self.metrics: dict[str, MetricBaseline] = {}

    def add_sample(self, metric: str, value: float, stamp: str | None = None) -> None:
        entry = self.metrics.setdefault(metric, MetricBaseline())
        entry.add(value)
        if stamp is not None:
            entry.last_update = stamp

    def lookup(self, metric: str) -> MetricBaseline | None:
        entry = self.metrics.get(metric)
        if entry is None or entry.count == 0:
            return None
        return entry

    def snapshot(self) -> dict:
        return {
            metric: {
                "mu": entry.mu,
                "sigma": entry.sigma,
                "count": entry.count,
                "last_update": entry.last_update,
            }
            for metric, entry in sorted(self.metrics.items())
        }

    @classmethod
    def from_snapshot(cls, payload: dict) -> "BaselineProfile":
        profile = cls()
        for metric, fields in payload.items():
            entry = MetricBaseline(
                mu=float(fields["mu"]),
                m2=float(fields["sigma"]) ** 2 * int(fields["count"]),
                count=int(fields["count"]),
                last_update=fields.get("last_update"),
            )
            profile.metrics[metric] = entry
        return profile


@dataclass
class Phq9Response:
    """One self-report: nine items Q1-Q9, each scored 0-3."""

    timestamp: str
    items: dict[str, int]

    @classmethod
    def validate(cls, timestamp: str, items: dict) -> "Phq9Response":
        expected = set(PHQ_TO_INDICATOR)
        if set(items) != expected:
            raise ValidationError(
                f"PHQ-9 needs exactly items {sorted(expected)}, got {sorted(items)}"
            )
        clean: dict[str, int] = {}
        for key in sorted(expected):
            value = items[key]
            if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value <= 3:
                raise ValidationError(f"item {key} must be an integer in [0,3]")
            clean[key] = value
        return cls(timestamp=timestamp, items=clean)


@dataclass
class IndicatorState:
    """Scoring state for one indicator: raw, smoothed, coverage, presence."""

    indicator: int
    beta: float
    theta: float
    score: float | None = None
    smoothed: float | None = None
    coverage: float = 0.0
    bit: int = 0


@dataclass
class TraceRow:
    feature: str
    weight: float
    direction: str
    value: float | None = None
    mu: float | None = None
    sigma: float | None = None
    z: float | None = None
    psi: float | None = None

    @property
    def available(self) -> bool:
        return self.psi is not None


@dataclass
class WindowDecision:
    """Everything the engine concluded about one window."""

    window_start: float
    status: str
    contextual: dict[str, float | None] = field(default_factory=dict)
    indicators: dict[int, IndicatorState] = field(default_factory=dict)
    support: int | None = None
    trace: dict[int, list[TraceRow]] = field(default_factory=dict)


class LinkageEngine:
    def __init__(self, spec: MappingSpec, baseline: BaselineProfile | None = None):
        self.spec = spec
        self.baseline = baseline or BaselineProfile()
        self.states = {
            i: IndicatorState(i, spec.betas[i], spec.thetas[i])
            for i in spec.indicators()
        }
        self.warmup_count = 0

    @property
    def warmed_up(self) -> bool:
        return self.warmup_count >= self.spec.warmup_windows

    def process_window(self, window: HLDWindow) -> WindowDecision:
        """Run the full chain on one aggregated window.

        During cold start the first ``warmup_windows`` quality windows only
        feed the baseline; they produce a warmup decision with no indicator
        output. Low-quality windows never change state.
        """
        if not window.quality_ok:
            return WindowDecision(window.window_start, LOW_QUALITY)

        if not self.warmed_up:
            for metric, value in sorted(window.metrics.items()):
                self.baseline.add_sample(metric, value)
            self.warmup_count += 1
            return WindowDecision(window.window_start, WARMUP)

        contextual = self.standardize_window(window.metrics)
        return self.score_contextual(
            window.window_start, contextual, raw_metrics=window.metrics
        )

    def standardize_window(self, metrics: dict[str, float]) -> dict[str, float | None]:
        """Clipped z-scores for every mapped feature; None marks absence."""
        contextual: dict[str, float | None] = {}
        for feature in self.spec.features():
            value = metrics.get(feature)
            entry = self.baseline.lookup(feature)
            if value is None or entry is None:
                contextual[feature] = None
            else:
                contextual[feature] = standardize(
                    value, entry.mu, entry.sigma,
                    self.spec.tau(feature), self.spec.epsilon,
                )
        return contextual

    def score_contextual(
        self,
        window_start: float,
        contextual: dict[str, float | None],
        raw_metrics: dict[str, float] | None = None,
    ) -> WindowDecision:
        """Score a standardized window and advance indicator states.

        This is the single scoring path: live streaming calls it with raw
        metrics attached (for the trace); replay from stored contextual
        records calls it without them and lands on identical numbers.
        """
        decision = WindowDecision(window_start, SCORED, contextual=dict(contextual))
        bits: dict[int, int] = {}
        for indicator in self.spec.indicators():
            state = self.states[indicator]
            rows: list[TraceRow] = []
            contributions: list[tuple[float, float]] = []
            total_weight = 0.0
            for entry in self.spec.entries_for(indicator):
                total_weight += entry.weight
                row = TraceRow(
                    feature=entry.feature, weight=entry.weight,
                    direction=entry.direction,
                )
                z = contextual.get(entry.feature)
                if z is not None:
                    psi = apply_direction(z, entry.direction)
                    contributions.append((psi, entry.weight))
                    row.z = z
                    row.psi = psi
                    if raw_metrics is not None:
                        base = self.baseline.lookup(entry.feature)
                        row.value = raw_metrics.get(entry.feature)
                        if base is not None:
                            row.mu = base.mu
                            row.sigma = base.sigma
                rows.append(row)

            score, coverage = indicator_score(contributions, total_weight)
            state.score = score
            state.coverage = coverage
            if score is not None:
                state.smoothed = ema_update(score, state.smoothed, state.beta)
            state.bit = binarize(state.smoothed, state.theta)
            bits[indicator] = state.bit

            decision.indicators[indicator] = IndicatorState(
                indicator=indicator, beta=state.beta, theta=state.theta,
                score=state.score, smoothed=state.smoothed,
                coverage=state.coverage, bit=state.bit,
            )
            decision.trace[indicator] = rows

        decision.support = mdd_support(bits)
        return decision

    def apply_phq9(
        self,
        response: Phq9Response,
        windows: Iterable[HLDWindow],
    ) -> dict[str, int]:
        """Recalibrate baselines from a PHQ-9 response.

        Windows observed since the previous response are absorbed into the
        baseline of every feature mapped to an indicator whose PHQ item
        scored 0 ("not at all"); items scored 1-3 leave their features
        untouched. The mapping itself never changes. Returns the new
        sample count per updated metric.
        """
        absorb_features: set[str] = set()
        for item, score in response.items.items():
            if score == 0:
                indicator = PHQ_TO_INDICATOR[item]
                for entry in self.spec.entries_for(indicator):
                    absorb_features.add(entry.feature)

        updated: dict[str, int] = {}
        for feature in sorted(absorb_features):
            values = [
                w.metrics[feature]
                for w in windows
                if w.quality_ok and feature in w.metrics
            ]
            for value in values:
                self.baseline.add_sample(feature, value, stamp=response.timestamp)
            if values:
                updated[feature] = self.baseline.metrics[feature].count
        return updated
