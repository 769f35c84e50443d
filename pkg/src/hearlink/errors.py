"""Exception types shared across the pipeline."""


class HearlinkError(Exception):
    """Base class for all package errors."""


class DecodeError(HearlinkError):
    """Raised when an audio container is malformed or truncated."""


class UnsupportedFormat(HearlinkError):
    """Raised when audio is syntactically valid but not PCM16 mono/stereo."""


class StreamOrderError(HearlinkError):
    """Raised when a stream delivers a frame older than one already seen."""


class InsufficientPeriods(HearlinkError):
    """Raised when a period track is too short for perturbation measures."""


class MissingBaseline(HearlinkError):
    """Raised when a metric has no calibrated baseline yet."""


class ConfigError(HearlinkError):
    """Raised when a mapping configuration document is invalid."""


class ValidationError(HearlinkError):
    """Raised on malformed user-supplied payloads (PHQ-9, synth profiles, p-values)."""


class WriterViolation(HearlinkError):
    """Raised when a non-registered writer appends to a collection."""


class DuplicateRecord(HearlinkError):
    """Raised when a record with an existing key is appended again."""


class NotFound(HearlinkError):
    """Raised when a collection or subject does not exist."""


class DegenerateInput(HearlinkError):
    """Raised when a statistic is undefined for the given data (zero variance)."""


class InsufficientData(HearlinkError):
    """Raised when a test needs more observations than supplied."""


class ManifestError(HearlinkError):
    """Raised when a study manifest is missing required columns."""


class NoData(HearlinkError):
    """Raised when an analysis is requested over an empty store."""
