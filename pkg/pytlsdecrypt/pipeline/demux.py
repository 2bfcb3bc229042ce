import abc
import typing as t
from abc import ABC

from ..events import DecryptedEvent
from ..types import Direction
from .exceptions import OffsetGapError

StreamKey = t.Tuple[str, Direction]


class BaseStreamSink(ABC):
    @abc.abstractmethod
    def write(self, data: bytes) -> None:
        raise NotImplementedError

    def close(self) -> None:
        pass


class MemorySink(BaseStreamSink):
    def __init__(self) -> None:
        self.buffer = bytearray()

    def write(self, data: bytes) -> None:
        self.buffer += data


class StreamDemux:
    """Splits decrypted events into one contiguous stream per session
    direction."""

    def __init__(
        self,
        sink_factory: t.Callable[[str, Direction], BaseStreamSink] = (
            lambda session_id, direction: MemorySink()
        ),
    ) -> None:
        self._sink_factory = sink_factory
        self._sinks: t.Dict[StreamKey, BaseStreamSink] = {}
        self._lengths: t.Dict[StreamKey, int] = {}

    def __call__(self, event: DecryptedEvent) -> None:
        key = (event.session_id, event.direction)
        expected = self._lengths.get(key, 0)
        if event.stream_offset != expected:
            raise OffsetGapError(
                f"[{event.session_id} {event.direction.value}] offset "
                f"{event.stream_offset}, expected {expected}"
            )
        if not event.payload:
            return
        sink = self._sinks.get(key)
        if sink is None:
            sink = self._sinks[key] = self._sink_factory(*key)
        sink.write(event.payload)
        self._lengths[key] = expected + len(event.payload)

    def length(self, session_id: str, direction: Direction) -> int:
        return self._lengths.get((session_id, direction), 0)

    def sink(
        self, session_id: str, direction: Direction
    ) -> t.Optional[BaseStreamSink]:
        return self._sinks.get((session_id, direction))

    @property
    def streams(self) -> t.Dict[StreamKey, BaseStreamSink]:
        return dict(self._sinks)

    def close(self) -> None:
        for sink in self._sinks.values():
            sink.close()
