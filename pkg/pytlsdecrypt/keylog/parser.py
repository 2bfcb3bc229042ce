import re
import typing as t
from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path

from ..result import Result
from .base import AddOutcome, BaseKeyStore, BaseReadOnlyKeyStore
from .exceptions import KeyLogFormatError, KeyLogReadError
from .store import InMemoryKeyStore
from .types import KeyLogEntry, KeyLogLabel

logger = getLogger(__name__)

SKIP_BLANK = "blank"
SKIP_COMMENT = "comment"
SKIP_RSA = "rsa premaster"
SKIP_UNKNOWN_LABEL = "unknown label"

_HEX = re.compile(r"[0-9a-fA-F]*")
_LABELS = {label.value: label for label in KeyLogLabel}


def _hex_field(value: str, lengths: t.Tuple[int, ...], message: str) -> bytes:
    if len(value) not in lengths or not _HEX.fullmatch(value):
        raise KeyLogFormatError(message)
    return bytes.fromhex(value)


def parse_keylog_line(line: str) -> Result[KeyLogEntry]:
    """Classifies one key log line as an entry, a skip or a format error."""
    line = line.rstrip("\r\n")
    if not line.strip():
        return Result.skip(SKIP_BLANK)
    if line.startswith("#"):
        return Result.skip(SKIP_COMMENT)

    fields = line.split(" ")
    name = fields[0]
    if name == "RSA":
        return Result.skip(SKIP_RSA)
    label = _LABELS.get(name)
    if label is None:
        return Result.skip(f"{SKIP_UNKNOWN_LABEL} {name[:32]}")

    try:
        if "" in fields:
            raise KeyLogFormatError("extra spaces in line")
        if len(fields) != 3:
            raise KeyLogFormatError(f"expected 3 fields, got {len(fields)}")
        client_random = _hex_field(
            fields[1], (64,), "client_random must be 64 hex chars"
        )
        if label is KeyLogLabel.CLIENT_RANDOM:
            secret = _hex_field(
                fields[2], (96,), "master secret must be 96 hex chars"
            )
        else:
            secret = _hex_field(
                fields[2],
                (64, 96),
                "traffic secret must be 64 or 96 hex chars",
            )
    except KeyLogFormatError as e:
        return Result.error(e)

    return Result.ok(KeyLogEntry(label, client_random, secret))


@dataclass
class KeyLogStats:
    accepted: int = 0
    skipped: int = 0
    errors: int = 0
    conflicts: int = 0
    unknown_labels: int = 0
    rsa_premaster: int = 0
    error_lines: t.List[t.Tuple[int, str]] = field(default_factory=list)

    def count(self, line_no: int, result: Result[KeyLogEntry]) -> None:
        if result.is_ok():
            self.accepted += 1
        elif result.is_skipped():
            self.skipped += 1
            reason = result.reason or ""
            if reason == SKIP_RSA:
                self.rsa_premaster += 1
            elif reason.startswith(SKIP_UNKNOWN_LABEL):
                self.unknown_labels += 1
        else:
            self.errors += 1
            self.error_lines.append((line_no, result.reason or ""))
            logger.warning("key log line %d: %s", line_no, result.reason)


def decode_line(raw: bytes) -> Result[KeyLogEntry]:
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        return Result.error(KeyLogFormatError("line is not valid utf-8"))
    return parse_keylog_line(text)


def ingest(
    store: BaseKeyStore,
    stats: KeyLogStats,
    lines: t.Iterable[bytes],
    first_line_no: int = 1,
) -> t.List[KeyLogEntry]:
    """Parses lines into the store; returns the entries that were new."""
    added = []
    for line_no, raw in enumerate(lines, start=first_line_no):
        result = decode_line(raw)
        stats.count(line_no, result)
        if not result.is_ok():
            continue
        entry = result.get()
        outcome = store.add(entry)
        if outcome is AddOutcome.ADDED:
            added.append(entry)
        elif outcome is AddOutcome.CONFLICT:
            stats.conflicts += 1
    return added


def split_lines(data: bytes) -> t.List[bytes]:
    lines = data.split(b"\n")
    if lines and not lines[-1]:
        lines.pop()
    return lines


def load_keylog(
    path: t.Union[str, Path],
) -> t.Tuple[InMemoryKeyStore, KeyLogStats]:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise KeyLogReadError(f"{path}: {e.strerror or e}") from e

    store = InMemoryKeyStore()
    stats = KeyLogStats()
    ingest(store, stats, split_lines(data))
    logger.info(
        "[%s] loaded: %d accepted, %d skipped, %d errors, %d conflicts",
        path,
        stats.accepted,
        stats.skipped,
        stats.errors,
        stats.conflicts,
    )
    return store, stats


def dump_keylog(store: BaseReadOnlyKeyStore) -> str:
    return "".join(f"{entry.to_line()}\n" for entry in store.entries())
