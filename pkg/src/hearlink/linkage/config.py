"""Mapping configuration: feature -> biomarker -> indicator entries.

The bundled default config (``data/default_config.json``) encodes the full
acoustic feature mapping: 54 entries across indicators (1)-(6), (8), (9),
each with an associative relationship, direction, weight, descriptor level
and signal group. Deployments may load their own document with the same
schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import ConfigError

RELATIONSHIPS = ("gradual", "nonlinear")
DIRECTIONS = ("positive", "negative", "both")
DESCRIPTORS = ("LLD", "HLD")
SIGNAL_GROUPS = ("prosodic", "formant", "source", "spectral")

DEFAULT_EPSILON = 1e-6
DEFAULT_CLIP = 3.0
DEFAULT_THETA = 1.0
DEFAULT_WARMUP_WINDOWS = 30
# high beta = slow, history-weighted indicators; low beta = fast responders
DEFAULT_BETAS = {1: 0.9, 2: 0.9, 3: 0.7, 4: 0.7, 5: 0.5, 6: 0.9, 7: 0.7, 8: 0.5, 9: 0.7}


@dataclass(frozen=True)
class MappingEntry:
    feature: str
    biomarker: str
    indicator: int
    relationship: str
    direction: str
    weight: float
    descriptor: str
    signal_group: str


@dataclass
class MappingSpec:
    entries: list[MappingEntry]
    betas: dict[int, float]
    thetas: dict[int, float]
    clip: dict[str, float] = field(default_factory=dict)
    clip_default: float = DEFAULT_CLIP
    epsilon: float = DEFAULT_EPSILON
    warmup_windows: int = DEFAULT_WARMUP_WINDOWS

    def tau(self, metric: str) -> float:
        return self.clip.get(metric, self.clip_default)

    def indicators(self) -> list[int]:
        return sorted({e.indicator for e in self.entries})

    def entries_for(self, indicator: int) -> list[MappingEntry]:
        return [e for e in self.entries if e.indicator == indicator]

    def features(self) -> list[str]:
        seen: dict[str, None] = {}
        for entry in self.entries:
            seen.setdefault(entry.feature, None)
        return list(seen)


def _parse_entry(raw: dict, position: int) -> MappingEntry:
    try:
        entry = MappingEntry(
            feature=str(raw["feature"]),
            biomarker=str(raw["biomarker"]),
            indicator=int(raw["indicator"]),
            relationship=str(raw.get("relationship", "gradual")),
            direction=str(raw["direction"]),
            weight=float(raw.get("weight", 1.0)),
            descriptor=str(raw.get("descriptor", "HLD")),
            signal_group=str(raw.get("signal_group", "prosodic")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"entry {position}: {exc}") from exc

    if entry.direction not in DIRECTIONS:
        raise ConfigError(f"entry {position}: unknown direction {entry.direction!r}")
    if entry.relationship not in RELATIONSHIPS:
        raise ConfigError(
            f"entry {position}: unknown relationship {entry.relationship!r}"
        )
    if not 1 <= entry.indicator <= 9:
        raise ConfigError(f"entry {position}: indicator {entry.indicator} outside 1-9")
    if entry.weight < 0:
        raise ConfigError(f"entry {position}: negative weight")
    if entry.descriptor not in DESCRIPTORS:
        raise ConfigError(f"entry {position}: unknown descriptor {entry.descriptor!r}")
    if entry.signal_group not in SIGNAL_GROUPS:
        raise ConfigError(
            f"entry {position}: unknown signal group {entry.signal_group!r}"
        )
    return entry


def load_mapping_config(document: dict | str | Path) -> MappingSpec:
    """Validate a mapping document (dict, JSON string, or file path).

    Raises ``ConfigError`` on unknown direction keywords, indicators
    outside 1-9, duplicate (feature, biomarker, indicator) triples, or
    out-of-range smoothing factors.
    """
    if isinstance(document, (str, Path)):
        path = Path(document)
        if path.exists():
            document = json.loads(path.read_text())
        elif isinstance(document, str):
            try:
                document = json.loads(document)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is neither a file nor JSON: {exc}") from exc
        else:
            raise ConfigError(f"config file not found: {path}")
    if not isinstance(document, dict):
        raise ConfigError("config root must be an object")

    entries = [
        _parse_entry(raw, i) for i, raw in enumerate(document.get("entries", []))
    ]
    seen: set[tuple[str, str, int]] = set()
    for entry in entries:
        key = (entry.feature, entry.biomarker, entry.indicator)
        if key in seen:
            raise ConfigError(f"duplicate entry {key}")
        seen.add(key)

    betas = dict(DEFAULT_BETAS)
    thetas = {i: DEFAULT_THETA for i in range(1, 10)}
    for key, params in (document.get("indicators") or {}).items():
        indicator = int(key)
        if not 1 <= indicator <= 9:
            raise ConfigError(f"indicator {indicator} outside 1-9")
        if "beta" in params:
            beta = float(params["beta"])
            if not 0.0 <= beta < 1.0:
                raise ConfigError(f"indicator {indicator}: beta {beta} outside [0,1)")
            betas[indicator] = beta
        if "theta" in params:
            thetas[indicator] = float(params["theta"])

    clip_doc = dict(document.get("clip") or {})
    clip_default = float(clip_doc.pop("default", DEFAULT_CLIP))
    clip = {str(k): float(v) for k, v in clip_doc.items()}

    return MappingSpec(
        entries=entries,
        betas=betas,
        thetas=thetas,
        clip=clip,
        clip_default=clip_default,
        epsilon=float(document.get("epsilon", DEFAULT_EPSILON)),
        warmup_windows=int(document.get("warmup_windows", DEFAULT_WARMUP_WINDOWS)),
    )


def default_config_document() -> dict:
    """The bundled mapping document as a plain dict."""
    text = resources.files("hearlink.data").joinpath("default_config.json").read_text()
    return json.loads(text)


def default_spec() -> MappingSpec:
    return load_mapping_config(default_config_document())
