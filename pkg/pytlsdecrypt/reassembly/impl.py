import bisect
import enum
import typing as t
from collections import OrderedDict
from logging import getLogger

from ..capture import Endpoint, FlowKey, TcpFlags, TcpSegment
from ..types import Direction
from .events import Close, Data, Gap, StreamEvent
from .exceptions import UnknownFlowError

logger = getLogger(__name__)

SEQ_MASK = 0xFFFFFFFF
DEFAULT_MAX_PENDING = 4 * 1024 * 1024
DEFAULT_IDLE_TIMEOUT = 300.0
TLS_PORT = 443


def seq_delta(a: int, b: int) -> int:
    """Signed distance a - b in 32-bit sequence space."""
    d = (a - b) & SEQ_MASK
    return d - (SEQ_MASK + 1) if d > 0x7FFFFFFF else d


class StreamState(str, enum.Enum):
    OPEN = "open"
    HALF_CLOSED = "half_closed"
    CLOSED = "closed"
    BROKEN = "broken"


class StreamBuffer:
    """Ordered byte stream of one direction of one connection.

    Stream offsets are unwrapped 64-bit positions counted from the byte
    after the initial sequence number. Pending out-of-order chunks never
    overlap: on overlap the bytes that arrived first are kept.
    """

    def __init__(
        self,
        flow: FlowKey,
        direction: Direction,
        *,
        max_pending: int = DEFAULT_MAX_PENDING,
    ) -> None:
        self.flow = flow
        self.direction = direction
        self.max_pending = max_pending
        self.isn: t.Optional[int] = None
        self.state = StreamState.OPEN
        self.delivered = 0
        self.pending_bytes = 0
        self._base_seq: t.Optional[int] = None
        self._next_offset = 0
        self._fin_offset: t.Optional[int] = None
        self._starts: t.List[int] = []
        self._chunks: t.List[bytes] = []
        self._held: t.List[TcpSegment] = []
        self.held_bytes = 0

    @property
    def next_expected(self) -> t.Optional[int]:
        if self._base_seq is None:
            return None
        return (self._base_seq + self._next_offset) & SEQ_MASK

    @property
    def anchored(self) -> bool:
        return self._base_seq is not None

    def accept(self, segment: TcpSegment) -> t.List[StreamEvent]:
        if self.state in (StreamState.CLOSED, StreamState.BROKEN):
            return []

        if self._base_seq is None:
            if TcpFlags.SYN not in segment.flags:
                return self._hold(segment)
            self.isn = segment.seq
            self._base_seq = (segment.seq + 1) & SEQ_MASK
            held, self._held = self._held, []
            self.held_bytes = 0
            events = self._accept(segment)
            for seg in held:
                events.extend(self._accept(seg))
            return events

        return self._accept(segment)

    def _hold(self, segment: TcpSegment) -> t.List[StreamEvent]:
        closing = bool(segment.flags & (TcpFlags.FIN | TcpFlags.RST))
        if not segment.payload and not closing:
            return []
        self._held.append(segment)
        self.held_bytes += len(segment.payload)
        if closing or self.held_bytes > self.max_pending:
            return self.anchor()
        return []

    def anchor(self) -> t.List[StreamEvent]:
        """Starts a stream picked up mid-connection at the lowest sequence
        number held so far and replays the held segments.

        Without a SYN the head of the stream is unknown, so segments are
        held until the peer sends payload, this direction closes, the
        held bytes pass `max_pending`, or the flow is flushed.
        """
        if self._base_seq is not None or not self._held:
            return []

        held, self._held = self._held, []
        self.held_bytes = 0
        lowest = held[0].seq
        for seg in held[1:]:
            if seq_delta(seg.seq, lowest) < 0:
                lowest = seg.seq
        self._base_seq = lowest
        logger.debug(
            "[%s %s] picked up mid-connection at seq %d",
            self.flow,
            self.direction.value,
            lowest,
        )

        events: t.List[StreamEvent] = []
        for seg in held:
            events.extend(self._accept(seg))
        return events

    def _accept(self, segment: TcpSegment) -> t.List[StreamEvent]:
        if self.state in (StreamState.CLOSED, StreamState.BROKEN):
            return []

        data_seq = segment.seq
        if TcpFlags.SYN in segment.flags:
            data_seq = (segment.seq + 1) & SEQ_MASK

        base = t.cast(int, self._base_seq)
        expected = (base + self._next_offset) & SEQ_MASK
        start = self._next_offset + seq_delta(data_seq, expected)

        events: t.List[StreamEvent] = []
        if segment.payload:
            events.extend(self._insert(start, segment.payload, segment.ts))

        if TcpFlags.RST in segment.flags:
            self.state = StreamState.CLOSED
            events.append(Close(self.flow, self.direction, segment.ts))
            return events

        if TcpFlags.FIN in segment.flags and self._fin_offset is None:
            self._fin_offset = start + len(segment.payload)
            self.state = StreamState.HALF_CLOSED

        if (
            self._fin_offset is not None
            and self._next_offset >= self._fin_offset
        ):
            self.state = StreamState.CLOSED
            events.append(Close(self.flow, self.direction, segment.ts))

        return events

    def _uncovered(
        self, start: int, data: bytes
    ) -> t.List[t.Tuple[int, bytes]]:
        end = start + len(data)
        cursor = start
        pieces = []
        idx = max(bisect.bisect_right(self._starts, start) - 1, 0)

        for s, chunk in zip(self._starts[idx:], self._chunks[idx:]):
            e = s + len(chunk)
            if e <= cursor:
                continue
            if s >= end:
                break
            if s > cursor:
                pieces.append((cursor, data[cursor - start : s - start]))
            cursor = max(cursor, e)

        if cursor < end:
            pieces.append((cursor, data[cursor - start :]))
        return pieces

    def _insert(
        self, start: int, data: bytes, ts: float
    ) -> t.List[StreamEvent]:
        if start + len(data) <= self._next_offset:
            return []
        if start < self._next_offset:
            data = data[self._next_offset - start :]
            start = self._next_offset

        for s, piece in self._uncovered(start, data):
            idx = bisect.bisect_left(self._starts, s)
            self._starts.insert(idx, s)
            self._chunks.insert(idx, piece)
            self.pending_bytes += len(piece)

        events: t.List[StreamEvent] = []
        ready = self._pop_contiguous()
        if ready:
            events.append(Data(self.flow, self.direction, ready, ts))

        if self.pending_bytes > self.max_pending:
            missing = self._starts[0] - self._next_offset
            logger.warning(
                "[%s %s] pending bytes %d over cap %d, stream broken",
                self.flow,
                self.direction.value,
                self.pending_bytes,
                self.max_pending,
            )
            self._starts.clear()
            self._chunks.clear()
            self.pending_bytes = 0
            self.state = StreamState.BROKEN
            events.append(Gap(self.flow, self.direction, missing, ts))

        return events

    def _pop_contiguous(self) -> bytes:
        parts = []
        while self._starts and self._starts[0] == self._next_offset:
            self._starts.pop(0)
            chunk = self._chunks.pop(0)
            parts.append(chunk)
            self.pending_bytes -= len(chunk)
            self._next_offset += len(chunk)
            self.delivered += len(chunk)
        return b"".join(parts)

    def flush(self, ts: float) -> t.List[StreamEvent]:
        """Gives up on holes, then closes the direction.

        The contiguous prefix has already gone out as Data by the time a
        hole is flushed. Each hole is reported as a Gap followed by the
        Data buffered behind it, so bytes past a hole are not lost; the
        last event is Close.
        """
        events = self.anchor()

        while self._starts:
            missing = self._starts[0] - self._next_offset
            events.append(Gap(self.flow, self.direction, missing, ts))
            self._next_offset = self._starts[0]
            ready = self._pop_contiguous()
            events.append(Data(self.flow, self.direction, ready, ts))

        if self.state is not StreamState.CLOSED:
            self.state = StreamState.CLOSED
            events.append(Close(self.flow, self.direction, ts))
        return events


class FlowState:
    def __init__(
        self, flow: FlowKey, client: Endpoint, *, max_pending: int
    ) -> None:
        self.flow = flow
        self.client = client
        self.server = flow.endpoint_b if client == flow.endpoint_a else (
            flow.endpoint_a
        )
        self.buffers = {
            direction: StreamBuffer(flow, direction, max_pending=max_pending)
            for direction in Direction
        }
        self.last_ts = 0.0

    def direction_of(self, segment: TcpSegment) -> Direction:
        if segment.src == self.client:
            return Direction.CLIENT_TO_SERVER
        return Direction.SERVER_TO_CLIENT

    @property
    def closed(self) -> bool:
        return all(
            buffer.state is StreamState.CLOSED
            for buffer in self.buffers.values()
        )


def guess_client(segment: TcpSegment) -> Endpoint:
    """Picks the connection initiator from the first segment seen."""
    if segment.is_syn_only:
        return segment.src
    if TcpFlags.SYN in segment.flags:
        return segment.dst
    if segment.dst.port == TLS_PORT:
        return segment.src
    if segment.src.port == TLS_PORT:
        return segment.dst
    if segment.dst.port < segment.src.port:
        return segment.src
    if segment.src.port < segment.dst.port:
        return segment.dst
    return max(segment.src, segment.dst)


class TcpReassembler:
    def __init__(
        self,
        *,
        max_pending: int = DEFAULT_MAX_PENDING,
        idle_timeout: float = DEFAULT_IDLE_TIMEOUT,
    ) -> None:
        self._max_pending = max_pending
        self._idle_timeout = idle_timeout
        self._flows: "OrderedDict[FlowKey, FlowState]" = OrderedDict()

    def __contains__(self, flow: FlowKey) -> bool:
        return flow in self._flows

    def flow_state(self, flow: FlowKey) -> FlowState:
        try:
            return self._flows[flow]
        except KeyError as e:
            raise UnknownFlowError(str(flow)) from e

    def track(self, segment: TcpSegment) -> t.List[StreamEvent]:
        """Feeds one segment. A flow is dropped once both directions are
        closed; bare segments of unknown flows are ignored."""
        state = self._flows.get(segment.flow)
        if state is None:
            if not segment.payload and TcpFlags.SYN not in segment.flags:
                return []
            state = FlowState(
                segment.flow,
                guess_client(segment),
                max_pending=self._max_pending,
            )
            self._flows[segment.flow] = state
            logger.debug(
                "[%s] new flow, client %s", segment.flow, state.client
            )

        state.last_ts = max(state.last_ts, segment.ts)
        self._flows.move_to_end(segment.flow)
        direction = state.direction_of(segment)
        events: t.List[StreamEvent] = []
        if segment.payload:
            # the peer only answers once it has this direction's head
            events.extend(state.buffers[direction.opposite].anchor())
        events.extend(state.buffers[direction].accept(segment))
        if state.closed:
            del self._flows[segment.flow]
            logger.debug("[%s] closed", segment.flow)
        return events

    def flush_flow(self, flow: FlowKey) -> t.List[StreamEvent]:
        state = self._flows.pop(flow, None)
        if state is None:
            raise UnknownFlowError(str(flow))

        events: t.List[StreamEvent] = []
        for direction in Direction:
            events.extend(state.buffers[direction].flush(state.last_ts))
        return events

    def evict_idle(self, now: float) -> t.List[StreamEvent]:
        idle = [
            flow
            for flow, state in self._flows.items()
            if now - state.last_ts > self._idle_timeout
        ]
        events: t.List[StreamEvent] = []
        for flow in idle:
            logger.info("[%s] idle, flushing", flow)
            events.extend(self.flush_flow(flow))
        return events

    def flush_all(self) -> t.List[StreamEvent]:
        events: t.List[StreamEvent] = []
        for flow in list(self._flows):
            events.extend(self.flush_flow(flow))
        return events
