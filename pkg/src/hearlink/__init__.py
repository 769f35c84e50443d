"""Edge-local speech analytics with explainable DSM-5 indicator scoring."""

__version__ = "0.1.0"

from .aggregate import HLDWindow
from .linkage import LinkageEngine, MappingSpec, default_spec, load_mapping_config
from .pipeline import benchmark, run_analysis, run_stream
from .store import MetricRecord, MetricStore

__all__ = [
    "__version__",
    "HLDWindow",
    "LinkageEngine",
    "MappingSpec",
    "default_spec",
    "load_mapping_config",
    "benchmark",
    "run_analysis",
    "run_stream",
    "MetricRecord",
    "MetricStore",
]
