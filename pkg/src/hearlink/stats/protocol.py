"""Configuration-driven association protocol over a subject manifest.

The manifest is a delimited table (TSV by default): one row per subject
with a gender label, session-level feature means, and PHQ item responses
(phq_q1..phq_q8; the ninth item is absent from PHQ-8, so indicator (9) is
never tested). Each hypothesis ties a feature group to indicators with an
expected correlation sign; tests run pooled or gender-stratified per the
Cohen's d screen, share one BH-FDR family, and export deterministic
r/p/q matrices.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import DegenerateInput, InsufficientData, ManifestError, ValidationError
from .tests import bh_fdr, cohens_d, pearson, spearman, stratify

GENDERS = ("male", "female", "other")

# default hypothesis spec: feature group -> (expected sign, indicators)
DEFAULT_HYPOTHESES = {
    "H1_pitch_variability": {
        "features": ["f0_std", "f0_range"],
        "direction": "negative",
        "indicators": [5, 8],
    },
    "H2_pausing": {
        "features": ["pause_duration", "pause_frequency"],
        "direction": "positive",
        "indicators": [5, 8],
    },
    "H3_energy_dynamics": {
        "features": ["intensity_std", "intensity_range"],
        "direction": "negative",
        "indicators": [5, 8],
    },
    "H4_speech_tempo": {
        "features": ["speech_rate", "articulation_rate"],
        "direction": "negative",
        "indicators": [5, 8],
    },
}

INDICATOR_ITEM = {5: "phq_q7", 8: "phq_q8", 1: "phq_q2", 2: "phq_q1",
                  3: "phq_q5", 4: "phq_q3", 6: "phq_q4", 7: "phq_q6"}


@dataclass
class SubjectRow:
    subject_id: str
    gender: str
    features: dict[str, float]
    phq_items: dict[str, int]


@dataclass
class AssociationResult:
    feature: str
    indicator: int
    stratum: str
    n: int
    r: float
    p: float
    q: float = 1.0
    significant: bool = False
    hypothesized_direction: str = "negative"
    direction_consistent: bool = False


@dataclass
class ProtocolConfig:
    alpha: float = 0.05
    d_threshold: float = 0.2
    method: str = "pearson"          # or "spearman"
    hypotheses: dict = field(default_factory=lambda: dict(DEFAULT_HYPOTHESES))


def load_manifest(source: str | Path, delimiter: str = "\t") -> list[SubjectRow]:
    """Parse a manifest file (or literal text) into subject rows."""
    path = Path(source)
    text = path.read_text() if path.exists() else str(source)
    reader = csv.DictReader(io.StringIO(text), delimiter=delimiter)
    if reader.fieldnames is None:
        raise ManifestError("manifest has no header row")
    headers = [h.strip() for h in reader.fieldnames]
    if "subject_id" not in headers or "gender" not in headers:
        raise ManifestError("manifest needs subject_id and gender columns")

    phq_cols = [h for h in headers if h.startswith("phq_q")]
    feature_cols = [
        h for h in headers if h not in ("subject_id", "gender") and h not in phq_cols
    ]
    rows: list[SubjectRow] = []
    for raw in reader:
        gender = raw["gender"].strip().lower()
        if gender not in GENDERS:
            gender = "other"
        features: dict[str, float] = {}
        for col in feature_cols:
            cell = (raw.get(col) or "").strip()
            if cell:
                features[col] = float(cell)
        phq: dict[str, int] = {}
        for col in phq_cols:
            cell = (raw.get(col) or "").strip()
            if cell:
                value = int(cell)
                if not 0 <= value <= 3:
                    raise ManifestError(f"{raw['subject_id']}: {col}={value} outside 0-3")
                phq[col] = value
        rows.append(SubjectRow(raw["subject_id"], gender, features, phq))
    return rows


@dataclass
class ProtocolReport:
    results: list[AssociationResult]
    effect_sizes: dict[str, float]
    plan: dict[str, str]
    skipped: list[str] = field(default_factory=list)

    @property
    def rejection_fraction(self) -> float:
        if not self.results:
            return 0.0
        return sum(1 for r in self.results if r.significant) / len(self.results)


def _collect(rows: list[SubjectRow], feature: str, item: str) -> tuple[list[float], list[float]]:
    xs, ys = [], []
    for row in rows:
        if feature in row.features and item in row.phq_items:
            value = row.features[feature]
            if math.isfinite(value):
                xs.append(value)
                ys.append(float(row.phq_items[item]))
    return xs, ys


def run_protocol(
    rows: list[SubjectRow],
    config: ProtocolConfig | None = None,
) -> ProtocolReport:
    """Correlate each hypothesis feature against its indicators' PHQ items.

    Steps: screen gender effects per feature (Cohen's d), choose pooled or
    stratified testing, correlate each (feature, indicator, stratum),
    BH-correct the whole family, and flag direction consistency against
    the hypothesized sign. Deterministic for a fixed manifest and config.
    """
    config = config or ProtocolConfig()
    correlate = pearson if config.method == "pearson" else spearman

    tested_features: list[str] = []
    hypothesis_of: dict[str, tuple[str, list[int]]] = {}
    for name, spec in config.hypotheses.items():
        for feature in spec["features"]:
            if feature not in hypothesis_of:
                tested_features.append(feature)
                hypothesis_of[feature] = (spec["direction"], list(spec["indicators"]))

    missing = [
        f for f in tested_features
        if not any(f in row.features for row in rows)
    ]
    if missing:
        raise ManifestError(f"manifest lacks feature columns: {missing}")

    effect_sizes: dict[str, float] = {}
    skipped: list[str] = []
    for feature in tested_features:
        males = [r.features[feature] for r in rows if r.gender == "male" and feature in r.features]
        females = [r.features[feature] for r in rows if r.gender == "female" and feature in r.features]
        try:
            effect_sizes[feature] = cohens_d(males, females)
        except InsufficientData:
            effect_sizes[feature] = 0.0
    plan = stratify(effect_sizes, config.d_threshold)

    results: list[AssociationResult] = []
    for feature in tested_features:
        direction, indicators = hypothesis_of[feature]
        strata = (
            [("pooled", rows)]
            if plan[feature] == "pooled"
            else [
                ("male", [r for r in rows if r.gender == "male"]),
                ("female", [r for r in rows if r.gender == "female"]),
            ]
        )
        for indicator in indicators:
            item = INDICATOR_ITEM.get(indicator)
            if item is None:
                continue
            for stratum_name, stratum_rows in strata:
                xs, ys = _collect(stratum_rows, feature, item)
                try:
                    r, p = correlate(xs, ys)
                except (DegenerateInput, InsufficientData) as exc:
                    skipped.append(f"{feature}/{indicator}/{stratum_name}: {exc}")
                    continue
                results.append(
                    AssociationResult(
                        feature=feature, indicator=indicator, stratum=stratum_name,
                        n=len(xs), r=r, p=p,
                        hypothesized_direction=direction,
                        direction_consistent=(
                            r < 0 if direction == "negative" else r > 0
                        ),
                    )
                )

    results.sort(key=lambda a: (a.feature, a.indicator, a.stratum))
    if results:
        reject, q = bh_fdr([a.p for a in results], config.alpha)
        for res, rej, qv in zip(results, reject, q):
            res.significant = rej
            res.q = qv
    return ProtocolReport(results=results, effect_sizes=effect_sizes, plan=plan, skipped=skipped)


def _matrix_lines(
    results: list[AssociationResult],
    value_of,
) -> str:
    indicators = sorted({r.indicator for r in results})
    row_keys: list[tuple[str, str]] = []
    for res in results:
        key = (res.feature, res.stratum)
        if key not in row_keys:
            row_keys.append(key)
    row_keys.sort()
    cells = {(r.feature, r.stratum, r.indicator): value_of(r) for r in results}
    lines = ["feature\tstratum\t" + "\t".join(f"indicator_{i}" for i in indicators)]
    for feature, stratum in row_keys:
        row = [feature, stratum]
        for indicator in indicators:
            value = cells.get((feature, stratum, indicator))
            row.append("" if value is None else f"{value:.10g}")
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def export_report(report: ProtocolReport, out_dir: str | Path) -> dict[str, Path]:
    """Write associations plus r/p/q matrices as TSV, byte-stable."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}

    lines = [
        "feature\tindicator\tstratum\tn\tr\tp\tq\tsignificant"
        "\thypothesized_direction\tdirection_consistent"
    ]
    for a in report.results:
        lines.append(
            f"{a.feature}\t{a.indicator}\t{a.stratum}\t{a.n}"
            f"\t{a.r:.10g}\t{a.p:.10g}\t{a.q:.10g}\t{int(a.significant)}"
            f"\t{a.hypothesized_direction}\t{int(a.direction_consistent)}"
        )
    paths["associations"] = out / "associations.tsv"
    paths["associations"].write_text("\n".join(lines) + "\n")

    for name, getter in (
        ("r_matrix", lambda a: a.r),
        ("p_matrix", lambda a: a.p),
        ("q_matrix", lambda a: a.q),
    ):
        paths[name] = out / f"{name}.tsv"
        paths[name].write_text(_matrix_lines(report.results, getter))
    return paths
