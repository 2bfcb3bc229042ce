import json
import os
import typing as t
from collections import OrderedDict
from logging import getLogger
from pathlib import Path

from ..detect import Alert
from ..events import DecryptedEvent, SessionRecord, SessionUpdate
from ..pipeline import BaseStreamSink, StreamDemux
from ..types import Direction
from .exceptions import ExportError

logger = getLogger(__name__)

SESSIONS_FILE = "sessions.ndjson"
LIVE_FILE = "live.ndjson"
DEFAULT_MAX_OPEN = 32

JsonObject = t.Dict[str, t.Any]


def stream_path(
    out_dir: t.Union[str, Path], session_id: str, direction: Direction
) -> Path:
    return Path(out_dir) / f"{session_id}.{direction.side}.bin"


class FileSink(BaseStreamSink):
    """Stream file that only comes into existence on the first write.

    The handle may be closed between writes; the next write reopens the
    file and appends.
    """

    def __init__(
        self,
        path: Path,
        on_open: t.Callable[["FileSink"], None] = lambda sink: None,
    ) -> None:
        self.path = path
        self._on_open = on_open
        self._fp: t.Optional[t.BinaryIO] = None
        self._created = False

    @property
    def is_open(self) -> bool:
        return self._fp is not None

    def write(self, data: bytes) -> None:
        try:
            if self._fp is None:
                self._fp = self.path.open("ab" if self._created else "wb")
                self._created = True
                self._on_open(self)
            self._fp.write(data)
            self._fp.flush()
        except OSError as e:
            raise ExportError(f"{self.path}: {e.strerror or e}") from e

    def close(self) -> None:
        if self._fp is not None:
            self._fp.close()
            self._fp = None


class StreamWriter:
    """Writes each session direction to its own file, keeping at most
    `max_open` files open at a time."""

    def __init__(
        self,
        out_dir: t.Union[str, Path],
        *,
        max_open: int = DEFAULT_MAX_OPEN,
    ) -> None:
        if max_open < 1:
            raise ExportError(f"max_open must be positive, got {max_open}")
        self._out_dir = Path(out_dir)
        self._max_open = max_open
        self._open: "OrderedDict[Path, FileSink]" = OrderedDict()
        self._demux = StreamDemux(self._sink)

    def _sink(self, session_id: str, direction: Direction) -> BaseStreamSink:
        return FileSink(
            stream_path(self._out_dir, session_id, direction),
            on_open=self._opened,
        )

    def _opened(self, sink: FileSink) -> None:
        self._open[sink.path] = sink
        while len(self._open) > self._max_open:
            _, oldest = self._open.popitem(last=False)
            oldest.close()

    def __call__(self, event: DecryptedEvent) -> None:
        self._demux(event)
        sink = self._demux.sink(event.session_id, event.direction)
        if isinstance(sink, FileSink) and sink.path in self._open:
            self._open.move_to_end(sink.path)

    @property
    def open_files(self) -> int:
        return sum(1 for sink in self._open.values() if sink.is_open)

    def length(self, session_id: str, direction: Direction) -> int:
        return self._demux.length(session_id, direction)

    @property
    def paths(self) -> t.List[Path]:
        return sorted(
            sink.path
            for sink in self._demux.streams.values()
            if isinstance(sink, FileSink)
        )

    def close(self) -> None:
        self._demux.close()
        self._open.clear()


def write_streams(
    out_dir: t.Union[str, Path], events: t.Iterable[DecryptedEvent]
) -> t.List[Path]:
    writer = StreamWriter(out_dir)
    try:
        for event in events:
            writer(event)
    finally:
        writer.close()
    return writer.paths


def session_to_json(record: SessionRecord) -> JsonObject:
    return {
        "type": "session",
        "id": record.id,
        "src": record.src,
        "dst": record.dst,
        "version": record.version,
        "cipher": record.cipher,
        "sni": record.sni,
        "status": record.status.value,
        "c2s_bytes": record.c2s_bytes,
        "s2c_bytes": record.s2c_bytes,
        "first_ts": record.first_ts,
        "last_ts": record.last_ts,
        "alert_count": record.alert_count,
    }


def alert_to_json(alert: Alert) -> JsonObject:
    return {
        "type": "alert",
        "rule": alert.rule,
        "session": alert.session_id,
        "direction": alert.direction.value,
        "offset": alert.offset,
        "excerpt": alert.excerpt.hex(),
        "ts": alert.ts,
    }


def event_to_json(event: DecryptedEvent) -> JsonObject:
    return {
        "type": "data",
        "session": event.session_id,
        "direction": event.direction.value,
        "offset": event.stream_offset,
        "length": len(event.payload),
        "ts": event.ts,
    }


def dumps(obj: JsonObject) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def ordered(
    records: t.Iterable[SessionRecord], alerts: t.Sequence[Alert]
) -> t.Tuple[t.List[SessionRecord], t.List[Alert]]:
    sessions = sorted(records, key=lambda r: (r.first_ts, r.id))
    rank = {record.id: i for i, record in enumerate(sessions)}
    missing = {a.session_id for a in alerts if a.session_id not in rank}
    if missing:
        raise ExportError(
            f"alerts reference unknown sessions: {', '.join(sorted(missing))}"
        )
    directions = list(Direction)
    return sessions, sorted(
        alerts,
        key=lambda a: (
            rank[a.session_id],
            directions.index(a.direction),
            a.offset,
            a.rule,
        ),
    )


def write_ndjson(
    records: t.Iterable[SessionRecord],
    alerts: t.Iterable[Alert],
    path: t.Union[str, Path],
) -> int:
    """Writes sessions then alerts, one JSON object per line.

    The file is replaced in one step, so readers never see a torn line.
    Returns the number of lines written.
    """
    path = Path(path)
    alerts = list(alerts)
    sessions, alerts = ordered(records, alerts)
    lines = [dumps(session_to_json(r)) for r in sessions]
    lines.extend(dumps(alert_to_json(a)) for a in alerts)

    partial = path.with_name(f".{path.name}.partial")
    try:
        with partial.open("w", encoding="utf-8", newline="\n") as fp:
            for line in lines:
                fp.write(line + "\n")
        os.replace(partial, path)
    except OSError as e:
        raise ExportError(f"{path}: {e.strerror or e}") from e

    logger.info(
        "[%s] %d sessions, %d alerts", path, len(sessions), len(alerts)
    )
    return len(lines)


class LiveJournal:
    """Append-only NDJSON log of a running follow session."""

    def __init__(self, path: t.Union[str, Path]) -> None:
        self.path = Path(path)
        try:
            self._fp: t.Optional[t.TextIO] = self.path.open(
                "a", encoding="utf-8", newline="\n"
            )
        except OSError as e:
            raise ExportError(f"{self.path}: {e.strerror or e}") from e

    def write(self, obj: JsonObject) -> None:
        if self._fp is None:
            raise ExportError(f"{self.path}: journal closed")
        self._fp.write(dumps(obj) + "\n")
        self._fp.flush()

    def event(self, event: DecryptedEvent) -> None:
        self.write(event_to_json(event))

    def alert(self, alert: Alert) -> None:
        self.write(alert_to_json(alert))

    def session(self, record: SessionRecord) -> None:
        self.write(session_to_json(record))

    def close(self) -> None:
        if self._fp is not None:
            self._fp.close()
            self._fp = None


class RunOutputs:
    """Routes pipeline events to stream files, the live journal and the
    final session list."""

    def __init__(
        self, out_dir: t.Union[str, Path], *, live: bool = False
    ) -> None:
        self.out_dir = Path(out_dir)
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ExportError(f"{self.out_dir}: {e.strerror or e}") from e
        self.streams = StreamWriter(self.out_dir)
        self.journal = LiveJournal(self.out_dir / LIVE_FILE) if live else None
        self.records: t.List[SessionRecord] = []
        self.alerts: t.List[Alert] = []

    def emit(self, events: t.Iterable[object]) -> None:
        for event in events:
            if isinstance(event, DecryptedEvent):
                self.streams(event)
                if self.journal is not None:
                    self.journal.event(event)
            elif isinstance(event, Alert):
                self.alerts.append(event)
                if self.journal is not None:
                    self.journal.alert(event)
            elif isinstance(event, SessionUpdate):
                if self.journal is not None:
                    self.journal.session(event.record)
            elif isinstance(event, SessionRecord):
                self.records.append(event)
                if self.journal is not None:
                    self.journal.session(event)

    def finalize(self) -> Path:
        self.streams.close()
        path = self.out_dir / SESSIONS_FILE
        write_ndjson(self.records, self.alerts, path)
        if self.journal is not None:
            self.journal.close()
        return path
