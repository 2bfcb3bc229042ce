from .base import (
    AddOutcome,
    BaseKeyStore,
    BaseReadOnlyKeyStore,
    BaseWriteOnlyKeyStore,
)
from .exceptions import (
    KeyLogError,
    KeyLogFormatError,
    KeyLogReadError,
    NoSessionsFoundError,
)
from .follow import KeyLogFollower, follow_keylog
from .jvm import JvmConversion, convert_jvm_debug
from .parser import (
    KeyLogStats,
    dump_keylog,
    ingest,
    load_keylog,
    parse_keylog_line,
)
from .store import InMemoryKeyStore
from .types import KeyLogEntry, KeyLogLabel

__all__ = (
    "AddOutcome",
    "BaseKeyStore",
    "BaseReadOnlyKeyStore",
    "BaseWriteOnlyKeyStore",
    "KeyLogError",
    "KeyLogFormatError",
    "KeyLogReadError",
    "NoSessionsFoundError",
    "KeyLogFollower",
    "follow_keylog",
    "JvmConversion",
    "convert_jvm_debug",
    "KeyLogStats",
    "dump_keylog",
    "ingest",
    "load_keylog",
    "parse_keylog_line",
    "InMemoryKeyStore",
    "KeyLogEntry",
    "KeyLogLabel",
)
