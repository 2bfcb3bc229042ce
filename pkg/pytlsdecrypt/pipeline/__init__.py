from .config import PipelineConfig
from .demux import BaseStreamSink, MemorySink, StreamDemux
from .exceptions import OffsetGapError, PipelineError
from .impl import (
    Pipeline,
    PipelineEvent,
    PipelineStats,
    SessionContext,
    process,
)

__all__ = (
    "PipelineConfig",
    "BaseStreamSink",
    "MemorySink",
    "StreamDemux",
    "OffsetGapError",
    "PipelineError",
    "Pipeline",
    "PipelineEvent",
    "PipelineStats",
    "SessionContext",
    "process",
)
