"""Shared exception types."""


class LexnetError(Exception):
    """Base class for all lexnet errors."""


class DecodingError(LexnetError):
    """Input bytes are not valid UTF-8."""

    def __init__(self, byte_offset: int, reason: str):
        self.byte_offset = byte_offset
        super().__init__(f"invalid UTF-8 at byte {byte_offset}: {reason}")


class CompositionError(LexnetError, ValueError):
    """A corpus cannot be re-partitioned under the requested constraints."""


class UndefinedMetricError(LexnetError):
    """A network measure is undefined for this input (empty or too small)."""


class PipelineError(LexnetError):
    """Failure inside a pipeline stage; carries the stage name."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")
