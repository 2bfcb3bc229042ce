from .exceptions import ExportError
from .impl import (
    DEFAULT_MAX_OPEN,
    LIVE_FILE,
    SESSIONS_FILE,
    FileSink,
    LiveJournal,
    RunOutputs,
    StreamWriter,
    alert_to_json,
    event_to_json,
    session_to_json,
    stream_path,
    write_ndjson,
    write_streams,
)

__all__ = (
    "ExportError",
    "DEFAULT_MAX_OPEN",
    "LIVE_FILE",
    "SESSIONS_FILE",
    "FileSink",
    "LiveJournal",
    "RunOutputs",
    "StreamWriter",
    "alert_to_json",
    "event_to_json",
    "session_to_json",
    "stream_path",
    "write_ndjson",
    "write_streams",
)
