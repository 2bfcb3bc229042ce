import typing as t

import pytest

from pytlsdecrypt.events import DecryptedEvent
from pytlsdecrypt.pipeline import MemorySink, OffsetGapError, StreamDemux
from tests.faked_tls import C2S, S2C


def event(
    offset: int, payload: bytes, session_id: str = "s1"
) -> DecryptedEvent:
    return DecryptedEvent(session_id, C2S, offset, payload, 23, 0.0)


class TestStreamDemux:
    def test_events_should_append_to_one_stream(self) -> None:
        # given
        demux = StreamDemux()
        # when
        demux(event(0, b"12345"))
        demux(event(5, b"678"))
        # then
        assert demux.length("s1", C2S) == 8
        sink = demux.sink("s1", C2S)
        assert isinstance(sink, MemorySink)
        assert bytes(sink.buffer) == b"12345678"
        assert demux.length("s1", S2C) == 0

    def test_sessions_should_not_share_streams(self) -> None:
        # given
        demux = StreamDemux()
        # when
        demux(event(0, b"a", "s1"))
        demux(event(0, b"b", "s2"))
        # then
        assert set(demux.streams) == {("s1", C2S), ("s2", C2S)}

    @pytest.mark.parametrize("offset", [4, 6])
    def test_offset_out_of_step_should_raise(self, offset: int) -> None:
        # given
        demux = StreamDemux()
        demux(event(0, b"12345"))
        # when / then
        with pytest.raises(OffsetGapError):
            demux(event(offset, b"x"))

    def test_sink_factory_should_be_called_once_per_stream(self) -> None:
        # given
        created: t.List[t.Tuple[str, object]] = []

        def factory(session_id: str, direction: object) -> MemorySink:
            created.append((session_id, direction))
            return MemorySink()

        demux = StreamDemux(factory)
        # when
        demux(event(0, b"ab"))
        demux(event(2, b"cd"))
        demux(event(4, b""))
        # then
        assert created == [("s1", C2S)]
