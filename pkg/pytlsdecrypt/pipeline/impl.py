import dataclasses
import enum
import typing as t
from collections import deque
from dataclasses import dataclass, field
from logging import getLogger

from ..capture import Endpoint, FlowKey, PcapRecord, TcpSegment, decode_frame
from ..detect import Alert, RuleSet, StreamScanner
from ..events import DecryptedEvent, SessionRecord, SessionUpdate
from ..keylog import (
    AddOutcome,
    BaseKeyStore,
    InMemoryKeyStore,
    KeyLogEntry,
    KeyLogLabel,
)
from ..keyschedule import (
    DirectionKeys,
    KeyScheduleError,
    SuiteParams,
    derive_keys_tls12,
    derive_keys_tls13,
    is_supported,
    lookup_suite,
    next_secret_tls13,
)
from ..reassembly import Close, Data, Gap, StreamEvent, TcpReassembler
from ..recordcrypt import (
    Alignment,
    AuthFailureError,
    PlaintextRecord,
    RecordCryptError,
    decrypt_record,
    verify_finished_alignment,
)
from ..tlswire import (
    ContentType,
    EncryptedRecord,
    HandshakeDefragmenter,
    HandshakeType,
    NotTlsError,
    PlaintextHandshake,
    TlsSession,
    TlsWireError,
    looks_like_record_header,
    parse_records,
)
from ..types import Direction, SessionStatus, TlsVersion
from .config import PipelineConfig

logger = getLogger(__name__)

PipelineEvent = t.Union[DecryptedEvent, Alert, SessionUpdate, SessionRecord]

EVICTION_CHECK_INTERVAL = 1.0


class Epoch(str, enum.Enum):
    HANDSHAKE = "handshake"
    APPLICATION = "application"


_TLS13_LABELS = {
    (Epoch.HANDSHAKE, Direction.CLIENT_TO_SERVER): (
        KeyLogLabel.CLIENT_HANDSHAKE_TRAFFIC_SECRET
    ),
    (Epoch.HANDSHAKE, Direction.SERVER_TO_CLIENT): (
        KeyLogLabel.SERVER_HANDSHAKE_TRAFFIC_SECRET
    ),
    (Epoch.APPLICATION, Direction.CLIENT_TO_SERVER): (
        KeyLogLabel.CLIENT_TRAFFIC_SECRET_0
    ),
    (Epoch.APPLICATION, Direction.SERVER_TO_CLIENT): (
        KeyLogLabel.SERVER_TRAFFIC_SECRET_0
    ),
}


@dataclass
class DirectionState:
    tail: bytes = b""
    first: bool = True
    after_gap: bool = False
    resync_next: bool = False
    dead: bool = False
    closed: bool = False
    keys: t.Optional[DirectionKeys] = None
    epoch: Epoch = Epoch.HANDSHAKE
    # record.seq minus keys.seq for the keys in `numbered`
    seq_offset: int = 0
    numbered: t.Optional[DirectionKeys] = None
    pending: t.Deque[t.Tuple[EncryptedRecord, bool]] = field(
        default_factory=deque
    )
    pending_bytes: int = 0
    plaintext_len: int = 0
    decrypted_records: int = 0
    finished: bool = False
    handshake: HandshakeDefragmenter = field(
        default_factory=HandshakeDefragmenter
    )


@dataclass
class PipelineStats:
    frames: int = 0
    decode_errors: int = 0
    skipped_frames: int = 0
    filtered: int = 0
    state_violations: int = 0
    decrypt_failures: int = 0
    evictions: int = 0


class SessionContext:
    def __init__(
        self, flow: FlowKey, client: Endpoint, server: Endpoint
    ) -> None:
        self.session = TlsSession(flow)
        self.client = client
        self.server = server
        self.id = f"flow-{flow.short_hash()}"
        self.named = False
        self.negotiated = False
        self.suite: t.Optional[SuiteParams] = None
        self.keyed = False
        self.seen_records = False
        self.not_tls = False
        self.unsupported = False
        self.broken = False
        self.evicted = False
        self.partial = False
        self.alert_count = 0
        self.directions = {d: DirectionState() for d in Direction}

    @property
    def flow(self) -> FlowKey:
        return self.session.flow

    @property
    def pending_bytes(self) -> int:
        return sum(d.pending_bytes for d in self.directions.values())

    @property
    def accepts_records(self) -> bool:
        return not (self.unsupported or self.broken or self.evicted)

    @property
    def status(self) -> SessionStatus:
        if self.not_tls:
            return SessionStatus.NOT_TLS
        if self.unsupported:
            return SessionStatus.UNSUPPORTED_SUITE
        if self.broken or not self.negotiated:
            return SessionStatus.BROKEN
        if self.evicted or not self.keyed:
            return SessionStatus.NO_KEY
        if self.partial or any(d.pending for d in self.directions.values()):
            return SessionStatus.PARTIAL
        return SessionStatus.DECRYPTED


class Pipeline:
    """Turns captured frames and key log entries into plaintext events.

    Encrypted records that arrive before their keys wait in a bounded
    per-session queue, so the order in which keys and packets show up
    does not change the output.
    """

    def __init__(
        self,
        keystore: t.Optional[BaseKeyStore] = None,
        config: PipelineConfig = PipelineConfig(),
        rules: t.Optional[RuleSet] = None,
    ) -> None:
        self._store = keystore if keystore is not None else InMemoryKeyStore()
        self._config = config
        self._rules = rules if rules is not None and len(rules) else None
        self._reassembler = TcpReassembler(
            max_pending=config.max_stream_pending,
            idle_timeout=config.idle_timeout,
        )
        self._endpoints: t.Dict[FlowKey, t.Tuple[Endpoint, Endpoint]] = {}
        self._flow_ts: t.Dict[FlowKey, t.Tuple[float, float]] = {}
        self._sessions: t.Dict[FlowKey, SessionContext] = {}
        self._ids: t.Set[str] = set()
        self._waiting: t.Dict[bytes, t.List[SessionContext]] = {}
        self._scanners: t.Dict[t.Tuple[str, Direction], StreamScanner] = {}
        self._closed: t.Set[FlowKey] = set()
        self._retired: t.List[SessionRecord] = []
        self._settled: t.List[SessionContext] = []
        self._pending_total = 0
        self._last_eviction_check: t.Optional[float] = None
        self.stats = PipelineStats()

    @property
    def store(self) -> BaseKeyStore:
        return self._store

    @property
    def pending_total(self) -> int:
        return self._pending_total

    def feed(self, record: PcapRecord) -> t.List[PipelineEvent]:
        self.stats.frames += 1
        result = decode_frame(record.link_type, record.frame, record.ts)
        if result.is_error():
            self.stats.decode_errors += 1
            logger.debug("frame at %.6f: %s", record.ts, result.reason)
            return []
        if result.is_skipped():
            self.stats.skipped_frames += 1
            return []
        return self.feed_segment(result.get())

    def feed_segment(self, segment: TcpSegment) -> t.List[PipelineEvent]:
        if not self._config.accepts(segment.src, segment.dst):
            self.stats.filtered += 1
            return []

        flow = segment.flow
        events = self._reassembler.track(segment)
        if flow not in self._endpoints and flow in self._reassembler:
            state = self._reassembler.flow_state(flow)
            self._endpoints[flow] = (state.client, state.server)
        if flow in self._endpoints:
            first, last = self._flow_ts.get(flow, (segment.ts, segment.ts))
            self._flow_ts[flow] = (first, max(last, segment.ts))

        out = self._on_stream_events(events)
        out.extend(self._evict_idle(segment.ts))
        return out

    def add_key(self, entry: KeyLogEntry) -> t.List[PipelineEvent]:
        if self._store.add(entry) is not AddOutcome.ADDED:
            return []

        out: t.List[PipelineEvent] = []
        for ctx in list(self._waiting.get(entry.client_random, ())):
            keyed = ctx.keyed
            out.extend(self._install_keys(ctx))
            if ctx.keyed and not keyed:
                out.append(self._update(ctx))
            out.extend(self._retire_when_done(ctx))
        return out

    def finish(self) -> t.List[PipelineEvent]:
        out = self._on_stream_events(self._reassembler.flush_all())
        for ctx in list(self._sessions.values()):
            out.extend(self._retire(ctx))

        records = sorted(self._retired, key=lambda r: (r.first_ts, r.id))
        out.extend(records)
        self._retired.clear()
        self._closed.clear()
        self._settled.clear()
        self._waiting.clear()
        self._endpoints.clear()
        self._flow_ts.clear()
        return out

    @property
    def live_flows(self) -> int:
        """Flows whose per-flow state is still held."""
        return len(self._endpoints)

    @property
    def live_sessions(self) -> int:
        return len(self._sessions)

    def _retire_when_done(self, ctx: SessionContext) -> t.List[PipelineEvent]:
        awaits_keys = (
            ctx.suite is not None and ctx.accepts_records and not ctx.keyed
        )
        if (
            ctx.flow not in self._closed
            or awaits_keys
            or any(d.pending for d in ctx.directions.values())
        ):
            return []
        return self._retire(ctx)

    def _retire(self, ctx: SessionContext) -> t.List[PipelineEvent]:
        """Settles a session whose flow has ended and releases everything
        held for it except the id, which stays taken."""
        flow = ctx.flow
        _, last_ts = self._flow_ts.get(flow, (0.0, 0.0))
        out: t.List[PipelineEvent] = []
        for direction in Direction:
            scanner = self._scanners.pop((ctx.id, direction), None)
            if scanner is not None:
                alerts = scanner.flush(last_ts)
                ctx.alert_count += len(alerts)
                out.extend(alerts)

        self._retired.append(self._record(ctx))
        if ctx.status is not SessionStatus.NOT_TLS:
            logger.info("[%s] finished: %s", ctx.id, ctx.status.value)

        self._drop_pending(ctx)
        del self._sessions[flow]
        self._forget(flow)
        return out

    def _forget(self, flow: FlowKey) -> None:
        self._closed.discard(flow)
        self._endpoints.pop(flow, None)
        self._flow_ts.pop(flow, None)

    def _on_flow_end(self, flow: FlowKey) -> t.List[PipelineEvent]:
        ctx = self._sessions.get(flow)
        if ctx is None:
            self._forget(flow)
            return []
        self._closed.add(flow)
        return self._retire_when_done(ctx)

    def _evict_idle(self, now: float) -> t.List[PipelineEvent]:
        if (
            self._last_eviction_check is not None
            and now - self._last_eviction_check < EVICTION_CHECK_INTERVAL
        ):
            return []
        self._last_eviction_check = now
        return self._on_stream_events(self._reassembler.evict_idle(now))

    def _on_stream_events(
        self, events: t.Iterable[StreamEvent]
    ) -> t.List[PipelineEvent]:
        out: t.List[PipelineEvent] = []
        ended: t.Dict[FlowKey, None] = {}
        for event in events:
            if isinstance(event, Data):
                out.extend(self._on_data(event))
            elif isinstance(event, Gap):
                self._on_gap(event)
            elif isinstance(event, Close):
                out.extend(self._on_close(event))
                if event.flow not in self._reassembler:
                    ended[event.flow] = None
        for flow in ended:
            out.extend(self._on_flow_end(flow))
        while self._settled:
            ctx = self._settled.pop()
            if self._sessions.get(ctx.flow) is ctx:
                out.extend(self._retire_when_done(ctx))
        return out

    def _context(self, flow: FlowKey) -> SessionContext:
        ctx = self._sessions.get(flow)
        if ctx is None:
            client, server = self._endpoints[flow]
            ctx = self._sessions[flow] = SessionContext(flow, client, server)
            self._ids.add(ctx.id)
        return ctx

    def _on_data(self, event: Data) -> t.List[PipelineEvent]:
        ctx = self._context(event.flow)
        state = ctx.directions[event.direction]
        if ctx.not_tls or ctx.broken or state.dead:
            return []

        if state.after_gap:
            state.after_gap = False
            if not looks_like_record_header(event.data):
                self._kill_direction(ctx, event.direction, "gap in record")
                return []
            state.resync_next = True

        try:
            records, state.tail = parse_records(
                state.tail + event.data, first=state.first
            )
        except NotTlsError as e:
            state.tail = b""
            if ctx.seen_records:
                self._break(ctx, str(e))
            else:
                ctx.not_tls = True
                logger.debug("[%s] not tls: %s", ctx.flow, e)
            return []
        except TlsWireError as e:
            self._break(ctx, str(e))
            return []

        if records:
            state.first = False
            ctx.seen_records = True

        out: t.List[PipelineEvent] = []
        for record in records:
            try:
                session_events = ctx.session.advance(
                    record, event.direction, event.ts
                )
            except TlsWireError as e:
                self.stats.state_violations += 1
                self._break(ctx, str(e))
                break
            for session_event in session_events:
                if isinstance(session_event, PlaintextHandshake):
                    out.extend(self._on_handshake(ctx, session_event))
                else:
                    out.extend(self._on_encrypted(ctx, session_event))
        return out

    def _on_gap(self, event: Gap) -> None:
        ctx = self._context(event.flow)
        logger.warning(
            "[%s %s] %d bytes missing from capture",
            ctx.id,
            event.direction.value,
            event.missing_len,
        )
        ctx.partial = True
        if not ctx.negotiated:
            self._break(ctx, "gap before the handshake completed")
            return
        state = ctx.directions[event.direction]
        state.tail = b""
        state.after_gap = True

    def _on_close(self, event: Close) -> t.List[PipelineEvent]:
        ctx = self._sessions.get(event.flow)
        if ctx is None:
            return []
        ctx.directions[event.direction].closed = True
        if all(d.closed for d in ctx.directions.values()) and (
            not ctx.not_tls
        ):
            return [self._update(ctx)]
        return []

    def _on_handshake(
        self, ctx: SessionContext, event: PlaintextHandshake
    ) -> t.List[PipelineEvent]:
        msg_type = event.message.msg_type
        if msg_type == HandshakeType.CLIENT_HELLO and not ctx.named:
            self._assign_id(ctx)
        elif (
            msg_type == HandshakeType.SERVER_HELLO
            and ctx.session.server_hello is not None
            and not ctx.negotiated
        ):
            return self._on_negotiated(ctx)
        return []

    def _assign_id(self, ctx: SessionContext) -> None:
        base = ctx.session.default_id
        candidate = base
        n = 0
        while candidate in self._ids:
            n += 1
            candidate = f"{base}-{ctx.flow.short_hash()}"
            if n > 1:
                candidate = f"{candidate}-{n}"
        self._ids.discard(ctx.id)
        self._ids.add(candidate)
        ctx.id = ctx.session.id = candidate
        ctx.named = True
        logger.info("[%s] client hello on %s", ctx.id, ctx.flow)

    def _on_negotiated(self, ctx: SessionContext) -> t.List[PipelineEvent]:
        ctx.negotiated = True
        session = ctx.session
        version = session.version
        cipher = session.cipher_suite
        if (
            version is None
            or not version.decryptable
            or cipher is None
            or not is_supported(cipher, version)
        ):
            ctx.unsupported = True
            logger.info(
                "[%s] not decryptable: version %s, suite %#06x",
                ctx.id,
                version.label if version else "unknown",
                cipher or 0,
            )
            return [self._update(ctx)]

        ctx.suite = lookup_suite(cipher)
        client_random, _, _, _ = session.require_negotiated()
        self._waiting.setdefault(client_random, []).append(ctx)
        out = self._install_keys(ctx)
        out.append(self._update(ctx))
        return out

    def _install_tls12(self, ctx: SessionContext) -> None:
        if ctx.keyed or ctx.suite is None:
            return
        client_random, server_random, _, _ = ctx.session.require_negotiated()
        master = self._store.find(client_random, KeyLogLabel.CLIENT_RANDOM)
        if master is None:
            return
        client, server = derive_keys_tls12(
            master, client_random, server_random, ctx.suite
        )
        ctx.directions[Direction.CLIENT_TO_SERVER].keys = client
        ctx.directions[Direction.SERVER_TO_CLIENT].keys = server
        ctx.keyed = True
        logger.info("[%s] keys installed", ctx.id)

    def _install_tls13(
        self, ctx: SessionContext, direction: Direction
    ) -> None:
        state = ctx.directions[direction]
        if state.keys is not None or state.dead or ctx.suite is None:
            return
        client_random = ctx.session.client_random or b""
        label = _TLS13_LABELS[(state.epoch, direction)]
        secret = self._store.find(client_random, label)
        if secret is None:
            return
        try:
            state.keys = derive_keys_tls13(secret, ctx.suite)
        except KeyScheduleError as e:
            logger.warning("[%s] %s: %s", ctx.id, label.value, e)
            ctx.partial = True
            return
        ctx.keyed = True
        logger.info(
            "[%s %s] %s keys installed",
            ctx.id,
            direction.value,
            state.epoch.value,
        )

    def _install_keys(self, ctx: SessionContext) -> t.List[PipelineEvent]:
        if not ctx.accepts_records or ctx.suite is None:
            return []
        if not ctx.suite.tls13:
            self._install_tls12(ctx)
        out: t.List[PipelineEvent] = []
        for direction in Direction:
            if ctx.suite.tls13:
                self._install_tls13(ctx, direction)
            out.extend(self._drain(ctx, direction))
        return out

    def _drain(
        self, ctx: SessionContext, direction: Direction
    ) -> t.List[PipelineEvent]:
        state = ctx.directions[direction]
        out: t.List[PipelineEvent] = []
        while (
            state.pending
            and state.keys is not None
            and not state.dead
            and ctx.accepts_records
        ):
            record, resync = state.pending.popleft()
            self._release(state, len(record.ciphertext))
            out.extend(self._decrypt(ctx, direction, record, resync))
        return out

    def _on_encrypted(
        self, ctx: SessionContext, record: EncryptedRecord
    ) -> t.List[PipelineEvent]:
        state = ctx.directions[record.direction]
        if state.dead or not ctx.accepts_records:
            return []
        resync = state.resync_next
        state.resync_next = False
        if state.keys is not None and not state.pending:
            return self._decrypt(ctx, record.direction, record, resync)

        size = len(record.ciphertext)
        state.pending.append((record, resync))
        state.pending_bytes += size
        self._pending_total += size

        if ctx.pending_bytes > self._config.max_pending_session:
            self._evict(ctx, "session pending budget exceeded")
        while self._pending_total > self._config.max_pending_total:
            victim = max(
                self._sessions.values(), key=lambda c: c.pending_bytes
            )
            self._evict(victim, "global pending budget exceeded")
        return []

    def _release(self, state: DirectionState, size: int) -> None:
        state.pending_bytes -= size
        self._pending_total -= size

    def _drop_pending(self, ctx: SessionContext) -> None:
        for state in ctx.directions.values():
            self._release(state, state.pending_bytes)
            state.pending.clear()
        waiting = self._waiting.get(ctx.session.client_random or b"")
        if waiting and ctx in waiting:
            waiting.remove(ctx)
            if not waiting:
                del self._waiting[ctx.session.client_random or b""]

    def _evict(self, ctx: SessionContext, reason: str) -> None:
        logger.warning("[%s] evicted: %s", ctx.id, reason)
        self.stats.evictions += 1
        ctx.evicted = True
        self._drop_pending(ctx)
        if ctx.flow in self._closed:
            self._settled.append(ctx)

    def _break(self, ctx: SessionContext, reason: str) -> None:
        logger.warning("[%s] broken: %s", ctx.id, reason)
        ctx.broken = True
        ctx.session.mark_broken()
        self._drop_pending(ctx)

    def _kill_direction(
        self, ctx: SessionContext, direction: Direction, reason: str
    ) -> None:
        logger.warning(
            "[%s %s] undecryptable from here: %s",
            ctx.id,
            direction.value,
            reason,
        )
        state = ctx.directions[direction]
        state.dead = True
        ctx.partial = True
        self._release(state, state.pending_bytes)
        state.pending.clear()

    def _decrypt(
        self,
        ctx: SessionContext,
        direction: Direction,
        record: EncryptedRecord,
        resync: bool = False,
    ) -> t.List[PipelineEvent]:
        state = ctx.directions[direction]
        keys = state.keys
        suite = ctx.suite
        version = ctx.session.version
        if keys is None or suite is None or version is None:
            return []

        if state.numbered is not keys:
            state.numbered = keys
            state.seq_offset = record.seq - keys.seq
        try:
            if resync:
                plain = self._resync(ctx, direction, keys, record)
            else:
                plain = decrypt_record(
                    keys,
                    dataclasses.replace(
                        record, seq=record.seq - state.seq_offset
                    ),
                    suite,
                    version,
                )
        except RecordCryptError as e:
            self.stats.decrypt_failures += 1
            ctx.partial = True
            logger.warning(
                "[%s %s] record %d: %s",
                ctx.id,
                direction.value,
                record.seq,
                e,
            )
            return []
        return self._on_plaintext(ctx, direction, record, plain)

    def _resync(
        self,
        ctx: SessionContext,
        direction: Direction,
        keys: DirectionKeys,
        record: EncryptedRecord,
    ) -> PlaintextRecord:
        """Finds the sequence number of the first record after a gap."""
        suite = ctx.suite
        version = ctx.session.version
        if suite is not None and version is not None:
            for seq in range(keys.seq, keys.seq + self._config.resync_window):
                trial = dataclasses.replace(keys, seq=seq)
                renumbered = dataclasses.replace(record, seq=seq)
                try:
                    plain = decrypt_record(trial, renumbered, suite, version)
                except RecordCryptError:
                    continue
                keys.seq = trial.seq
                ctx.directions[direction].seq_offset = record.seq - seq
                logger.info(
                    "[%s %s] realigned at sequence %d",
                    ctx.id,
                    direction.value,
                    seq,
                )
                return plain

        self._kill_direction(ctx, direction, "no sequence number fits")
        raise AuthFailureError("resync window exhausted")

    def _on_plaintext(
        self,
        ctx: SessionContext,
        direction: Direction,
        record: EncryptedRecord,
        plain: PlaintextRecord,
    ) -> t.List[PipelineEvent]:
        state = ctx.directions[direction]
        version = ctx.session.version
        first = state.decrypted_records == 0
        state.decrypted_records += 1

        if version is TlsVersion.TLS1_2 and first:
            alignment = verify_finished_alignment(version, plain)
            if alignment is Alignment.WARNING:
                logger.warning("[%s %s] key mismatch", ctx.id, direction.value)
                ctx.partial = True

        if plain.content_type == ContentType.APPLICATION_DATA:
            if plain.payload:
                return self._deliver(ctx, direction, plain, record.ts)
        elif plain.content_type == ContentType.HANDSHAKE:
            self._on_protected_handshake(ctx, direction, plain)
        elif plain.content_type == ContentType.ALERT:
            logger.debug("[%s %s] alert", ctx.id, direction.value)
        return []

    def _on_protected_handshake(
        self, ctx: SessionContext, direction: Direction, plain: PlaintextRecord
    ) -> None:
        state = ctx.directions[direction]
        suite = ctx.suite
        if suite is None:
            return

        if not suite.tls13:
            if state.finished:
                logger.warning("[%s] renegotiation, decryption stops", ctx.id)
                for other in Direction:
                    self._kill_direction(ctx, other, "renegotiation")
                return
            state.finished = True
            return

        try:
            messages = state.handshake.feed(plain.payload)
        except TlsWireError as e:
            self._kill_direction(ctx, direction, str(e))
            return

        for message in messages:
            if (
                message.msg_type == HandshakeType.FINISHED
                and state.epoch is Epoch.HANDSHAKE
            ):
                state.finished = True
                state.epoch = Epoch.APPLICATION
                state.keys = None
                self._install_tls13(ctx, direction)
                return
            if (
                message.msg_type == HandshakeType.KEY_UPDATE
                and state.epoch is Epoch.APPLICATION
                and state.keys is not None
                and state.keys.secret is not None
            ):
                secret = next_secret_tls13(state.keys.secret, suite)
                state.keys = derive_keys_tls13(secret, suite)
                logger.info("[%s %s] key update", ctx.id, direction.value)
                return

    def _deliver(
        self,
        ctx: SessionContext,
        direction: Direction,
        plain: PlaintextRecord,
        ts: float,
    ) -> t.List[PipelineEvent]:
        state = ctx.directions[direction]
        out: t.List[PipelineEvent] = [
            DecryptedEvent(
                session_id=ctx.id,
                direction=direction,
                stream_offset=state.plaintext_len,
                payload=plain.payload,
                content_type=plain.content_type,
                ts=ts,
            )
        ]
        state.plaintext_len += len(plain.payload)

        if self._rules is not None:
            key = (ctx.id, direction)
            scanner = self._scanners.get(key)
            if scanner is None:
                scanner = self._scanners[key] = StreamScanner(
                    self._rules, ctx.id, direction
                )
            alerts = scanner.feed(plain.payload, ts)
            ctx.alert_count += len(alerts)
            out.extend(alerts)
        return out

    def _record(self, ctx: SessionContext) -> SessionRecord:
        session = ctx.session
        first_ts, last_ts = self._flow_ts.get(ctx.flow, (0.0, 0.0))
        version = session.version
        cipher = session.cipher_suite
        return SessionRecord(
            id=ctx.id,
            src=str(ctx.client),
            dst=str(ctx.server),
            version=version.label if version else None,
            cipher=f"0x{cipher:04x}" if cipher is not None else None,
            sni=session.sni,
            status=ctx.status,
            c2s_bytes=ctx.directions[Direction.CLIENT_TO_SERVER].plaintext_len,
            s2c_bytes=ctx.directions[Direction.SERVER_TO_CLIENT].plaintext_len,
            first_ts=first_ts,
            last_ts=last_ts,
            alert_count=ctx.alert_count,
            client_random=session.client_random,
            cipher_id=cipher,
        )

    def _update(self, ctx: SessionContext) -> SessionUpdate:
        return SessionUpdate(self._record(ctx))


def process(
    records: t.Iterable[PcapRecord],
    keystore: t.Optional[BaseKeyStore] = None,
    config: PipelineConfig = PipelineConfig(),
    rules: t.Optional[RuleSet] = None,
) -> t.Iterator[PipelineEvent]:
    pipeline = Pipeline(keystore, config, rules)
    for record in records:
        yield from pipeline.feed(record)
    yield from pipeline.finish()
