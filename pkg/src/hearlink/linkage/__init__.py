from .config import (
    MappingEntry,
    MappingSpec,
    default_config_document,
    default_spec,
    load_mapping_config,
)
from .engine import (
    PHQ_TO_INDICATOR,
    BaselineProfile,
    IndicatorState,
    LinkageEngine,
    Phq9Response,
    WindowDecision,
)
from .rules import (
    apply_direction,
    binarize,
    ema_update,
    indicator_score,
    mdd_support,
    standardize,
)

__all__ = [
    "MappingEntry",
    "MappingSpec",
    "default_config_document",
    "default_spec",
    "load_mapping_config",
    "PHQ_TO_INDICATOR",
    "BaselineProfile",
    "IndicatorState",
    "LinkageEngine",
    "Phq9Response",
    "WindowDecision",
    "apply_direction",
    "binarize",
    "ema_update",
    "indicator_score",
    "mdd_support",
    "standardize",
]
