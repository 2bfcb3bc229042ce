import random
import typing as t

import pytest

from pytlsdecrypt.capture import TcpFlags, TcpSegment
from pytlsdecrypt.reassembly import (
    Close,
    Data,
    Gap,
    StreamEvent,
    StreamState,
    TcpReassembler,
    UnknownFlowError,
    guess_client,
    seq_delta,
)
from pytlsdecrypt.types import Direction
from tests.faked_tls import (
    C2S,
    CLIENT,
    S2C,
    SERVER,
    endpoint,
    segment,
    tls12_session,
)


def run(
    segments: t.Iterable[TcpSegment],
    reassembler: t.Optional[TcpReassembler] = None,
) -> t.List[StreamEvent]:
    reassembler = reassembler or TcpReassembler()
    events: t.List[StreamEvent] = []
    for seg in segments:
        events.extend(reassembler.track(seg))
    return events


def stream_of(events: t.Iterable[StreamEvent], direction: Direction) -> bytes:
    return b"".join(
        e.data
        for e in events
        if isinstance(e, Data) and e.direction is direction
    )


def shuffle_within_window(
    items: t.List[TcpSegment], rng: random.Random, window: int
) -> t.List[TcpSegment]:
    remaining = list(items)
    out = []
    while remaining:
        pick = rng.randrange(min(window, len(remaining)))
        out.append(remaining.pop(pick))
    return out


class TestSeqDelta:
    @pytest.mark.parametrize(
        "a, b, expected",
        [
            (10, 5, 5),
            (5, 10, -5),
            (3, 0xFFFFFFFE, 5),
            (0xFFFFFFFE, 3, -5),
            (7, 7, 0),
        ],
    )
    def test_should_use_32bit_sequence_space(
        self, a: int, b: int, expected: int
    ) -> None:
        assert seq_delta(a, b) == expected


class TestGuessClient:
    def test_syn_sender_should_be_client(self) -> None:
        # given
        syn = segment(SERVER, CLIENT, 1, flags=TcpFlags.SYN)
        # when / then
        assert guess_client(syn) == SERVER

    def test_syn_ack_receiver_should_be_client(self) -> None:
        # given
        syn_ack = segment(SERVER, CLIENT, 1, flags=TcpFlags.SYN | TcpFlags.ACK)
        # when / then
        assert guess_client(syn_ack) == CLIENT

    def test_mid_capture_should_prefer_tls_port(self) -> None:
        # given
        data = segment(SERVER, CLIENT, 1, b"x")
        # when / then
        assert guess_client(data) == CLIENT


class TestTcpReassembler:
    def test_in_order_segments_should_deliver_both_streams(self) -> None:
        # given
        session = tls12_session()
        # when
        events = run(session.segments(mss=64))
        # then
        assert stream_of(events, C2S) == session.stream(C2S)
        assert stream_of(events, S2C) == session.stream(S2C)
        assert not [e for e in events if isinstance(e, Gap)]
        closes = [e for e in events if isinstance(e, Close)]
        assert {c.direction for c in closes} == {C2S, S2C}

    def test_reversed_data_should_deliver_once_complete(self) -> None:
        # given
        session = tls12_session()
        segments = session.segments(mss=32, close=False)
        handshake, data = segments[:3], segments[3:]
        # when
        events = run(handshake + data[::-1])
        # then
        assert stream_of(events, C2S) == session.stream(C2S)
        assert stream_of(events, S2C) == session.stream(S2C)

    def test_reordered_and_duplicated_segments_should_not_change_streams(
        self,
    ) -> None:
        # given
        session = tls12_session(
            requests=[b"GET /a HTTP/1.1\r\n\r\n", b"GET /b HTTP/1.1\r\n\r\n"],
            responses=[b"first" * 40, b"second" * 40],
        )
        segments = session.segments(mss=48)
        handshake, rest = segments[:3], segments[3:]
        expected = {d: session.stream(d) for d in Direction}

        for seed in range(120):
            rng = random.Random(seed)
            noisy = []
            for seg in rest:
                noisy.append(seg)
                if rng.random() < 0.1:
                    noisy.append(seg)
            shuffled = shuffle_within_window(noisy, rng, 8)
            # when
            events = run(handshake + shuffled)
            # then
            for direction in Direction:
                assert stream_of(events, direction) == expected[direction], (
                    seed
                )
            assert not [e for e in events if isinstance(e, Gap)], seed

    def test_overlap_should_keep_first_arrived_bytes(self) -> None:
        # given
        segments = [
            segment(CLIENT, SERVER, 100, flags=TcpFlags.SYN),
            segment(CLIENT, SERVER, 105, b"EFGH"),
            segment(CLIENT, SERVER, 103, b"cdXYZ"),
            segment(CLIENT, SERVER, 101, b"ab"),
        ]
        # when
        events = run(segments)
        # then
        assert stream_of(events, C2S) == b"abcdEFGH"

    def test_sequence_wraparound_should_be_transparent(self) -> None:
        # given
        session = tls12_session()
        segments = session.segments(mss=16, isn=(0xFFFFFFF0, 0xFFFFFF00))
        # when
        events = run(segments)
        # then
        assert stream_of(events, C2S) == session.stream(C2S)
        assert stream_of(events, S2C) == session.stream(S2C)

    def test_flush_should_report_hole_and_release_later_bytes(self) -> None:
        # given
        reassembler = TcpReassembler()
        segments = [
            segment(CLIENT, SERVER, 0, flags=TcpFlags.SYN),
            segment(CLIENT, SERVER, 1, b"abc"),
            segment(CLIENT, SERVER, 9, b"xyz"),
        ]
        delivered = run(segments, reassembler)
        # when
        flushed = reassembler.flush_flow(segments[0].flow)
        # then
        assert stream_of(delivered, C2S) == b"abc"
        gaps = [e for e in flushed if isinstance(e, Gap)]
        assert [g.missing_len for g in gaps] == [5]
        assert stream_of(flushed, C2S) == b"xyz"
        assert segments[0].flow not in reassembler

    def test_flush_of_unknown_flow_should_raise(self) -> None:
        # given
        reassembler = TcpReassembler()
        flow = segment(CLIENT, SERVER, 1).flow
        # when / then
        with pytest.raises(UnknownFlowError):
            reassembler.flush_flow(flow)
        with pytest.raises(UnknownFlowError):
            reassembler.flow_state(flow)

    def test_pending_over_budget_should_break_direction(self) -> None:
        # given
        reassembler = TcpReassembler(max_pending=10)
        syn = segment(CLIENT, SERVER, 0, flags=TcpFlags.SYN)
        ahead = segment(CLIENT, SERVER, 50, b"z" * 20)
        # when
        events = run([syn, ahead], reassembler)
        later = reassembler.track(segment(CLIENT, SERVER, 1, b"a"))
        # then
        assert [type(e) for e in events] == [Gap]
        buffer = reassembler.flow_state(syn.flow).buffers[C2S]
        assert buffer.state is StreamState.BROKEN
        assert buffer.pending_bytes == 0
        assert later == []

    def test_evict_idle_should_flush_quiet_flows(self) -> None:
        # given
        reassembler = TcpReassembler(idle_timeout=10.0)
        quiet = segment(CLIENT, SERVER, 1, b"old", ts=1.0)
        busy_client = endpoint("10.0.0.1", 50001)
        busy = segment(busy_client, SERVER, 1, b"new", ts=20.0)
        run([quiet, busy], reassembler)
        # when
        events = reassembler.evict_idle(now=20.0)
        # then
        assert quiet.flow not in reassembler
        assert busy.flow in reassembler
        assert all(e.flow == quiet.flow for e in events)

    def test_rst_should_close_direction(self) -> None:
        # given
        reassembler = TcpReassembler()
        segments = [
            segment(CLIENT, SERVER, 0, flags=TcpFlags.SYN),
            segment(CLIENT, SERVER, 1, b"abc"),
            segment(CLIENT, SERVER, 4, flags=TcpFlags.RST),
        ]
        # when
        events = run(segments, reassembler)
        # then
        assert isinstance(events[-1], Close)
        buffer = reassembler.flow_state(segments[0].flow).buffers[C2S]
        assert buffer.state is StreamState.CLOSED

    def test_mid_capture_reversed_segments_should_keep_earlier_bytes(
        self,
    ) -> None:
        # given
        reassembler = TcpReassembler()
        segments = [
            segment(CLIENT, SERVER, 3, b"CD"),
            segment(CLIENT, SERVER, 1, b"AB"),
        ]
        # when
        delivered = run(segments, reassembler)
        flushed = reassembler.flush_flow(segments[0].flow)
        # then
        events = delivered + flushed
        assert stream_of(events, C2S) == b"ABCD"
        assert not [e for e in events if isinstance(e, Gap)]
        assert isinstance(events[-1], Close)

    def test_mid_capture_stream_should_start_when_peer_answers(
        self,
    ) -> None:
        # given
        reassembler = TcpReassembler()
        held = run(
            [
                segment(CLIENT, SERVER, 1002, b"-world"),
                segment(CLIENT, SERVER, 1000, b"hi"),
            ],
            reassembler,
        )
        # when
        answered = reassembler.track(segment(SERVER, CLIENT, 5000, b"ok"))
        # then
        assert held == []
        assert stream_of(answered, C2S) == b"hi-world"
        state = reassembler.flow_state(segment(CLIENT, SERVER, 0).flow)
        assert state.buffers[C2S].next_expected == 1008
        assert state.buffers[S2C].anchored is False

    def test_mid_capture_fin_should_release_held_bytes(self) -> None:
        # given
        segments = [
            segment(CLIENT, SERVER, 7, b"tail"),
            segment(CLIENT, SERVER, 4, b"mid"),
            segment(CLIENT, SERVER, 11, flags=TcpFlags.FIN),
        ]
        # when
        events = run(segments)
        # then
        assert stream_of(events, C2S) == b"midtail"
        assert isinstance(events[-1], Close)

    def test_late_syn_should_replay_held_segments(self) -> None:
        # given
        segments = [
            segment(CLIENT, SERVER, 11, b"world"),
            segment(CLIENT, SERVER, 10, flags=TcpFlags.SYN),
            segment(CLIENT, SERVER, 16, b"!"),
        ]
        # when
        events = run(segments)
        # then
        assert stream_of(events, C2S) == b"world!"

    def test_flush_should_emit_prefix_then_gap_then_rest_then_close(
        self,
    ) -> None:
        # given
        reassembler = TcpReassembler()
        segments = [
            segment(CLIENT, SERVER, 0, flags=TcpFlags.SYN),
            segment(CLIENT, SERVER, 1, b"ab"),
            segment(CLIENT, SERVER, 5, b"ef"),
        ]
        delivered = run(segments, reassembler)
        # when
        flushed = reassembler.flush_flow(segments[0].flow)
        # then
        assert [type(e) for e in delivered] == [Data]
        c2s = [e for e in flushed if e.direction is C2S]
        assert [type(e) for e in c2s] == [Gap, Data, Close]
        assert t.cast(Gap, c2s[0]).missing_len == 2

    def test_closed_flow_should_be_dropped(self) -> None:
        # given
        reassembler = TcpReassembler()
        session = tls12_session()
        segments = session.segments()
        # when
        run(segments[:-1], reassembler)
        tracked_before_last_fin = segments[0].flow in reassembler
        run(segments[-1:], reassembler)
        # then
        assert tracked_before_last_fin is True
        assert segments[0].flow not in reassembler

    def test_bare_segment_of_unknown_flow_should_be_ignored(self) -> None:
        # given
        reassembler = TcpReassembler()
        ack = segment(CLIENT, SERVER, 10)
        fin = segment(CLIENT, SERVER, 10, flags=TcpFlags.FIN | TcpFlags.ACK)
        # when
        events = run([ack, fin], reassembler)
        # then
        assert events == []
        assert ack.flow not in reassembler
