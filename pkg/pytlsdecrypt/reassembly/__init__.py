from .events import Close, Data, Gap, StreamEvent
from .exceptions import ReassemblyError, UnknownFlowError
from .impl import (
    FlowState,
    StreamBuffer,
    StreamState,
    TcpReassembler,
    guess_client,
    seq_delta,
)

__all__ = (
    "Close",
    "Data",
    "Gap",
    "StreamEvent",
    "ReassemblyError",
    "UnknownFlowError",
    "FlowState",
    "StreamBuffer",
    "StreamState",
    "TcpReassembler",
    "guess_client",
    "seq_delta",
)
