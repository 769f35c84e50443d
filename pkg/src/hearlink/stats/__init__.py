from .protocol import (
    DEFAULT_HYPOTHESES,
    AssociationResult,
    ProtocolConfig,
    ProtocolReport,
    SubjectRow,
    export_report,
    load_manifest,
    run_protocol,
)
from .tests import bh_fdr, cohens_d, pearson, spearman, stratify

__all__ = [
    "DEFAULT_HYPOTHESES",
    "AssociationResult",
    "ProtocolConfig",
    "ProtocolReport",
    "SubjectRow",
    "export_report",
    "load_manifest",
    "run_protocol",
    "bh_fdr",
    "cohens_d",
    "pearson",
    "spearman",
    "stratify",
]
