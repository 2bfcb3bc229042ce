import typing as t
from dataclasses import dataclass

from ..capture import FlowKey
from ..types import Direction


@dataclass(frozen=True)
class Data:
    flow: FlowKey
    direction: Direction
    data: bytes
    ts: float


@dataclass(frozen=True)
class Gap:
    flow: FlowKey
    direction: Direction
    missing_len: int
    ts: float


@dataclass(frozen=True)
class Close:
    flow: FlowKey
    direction: Direction
    ts: float


StreamEvent = t.Union[Data, Gap, Close]
