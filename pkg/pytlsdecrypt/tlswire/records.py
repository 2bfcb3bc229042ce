import enum
import struct
import typing as t
from dataclasses import dataclass

from .exceptions import MalformedError, NotTlsError, OversizeRecordError

RECORD_HEADER_LEN = 5
MAX_PLAINTEXT_LEN = 1 << 14
MAX_FRAGMENT_LEN = MAX_PLAINTEXT_LEN + 2048


class ContentType(enum.IntEnum):
    CHANGE_CIPHER_SPEC = 20
    ALERT = 21
    HANDSHAKE = 22
    APPLICATION_DATA = 23


@dataclass(frozen=True)
class TlsRecord:
    content_type: int
    legacy_version: int
    fragment: bytes

    @property
    def header(self) -> bytes:
        return struct.pack(
            "!BHH", self.content_type, self.legacy_version, len(self.fragment)
        )

    def serialize(self) -> bytes:
        return self.header + self.fragment


_CONTENT_TYPES = frozenset(int(c) for c in ContentType)


def _check_header(buf: bytes, *, first: bool) -> None:
    content_type = buf[0]
    if content_type not in _CONTENT_TYPES:
        if first:
            raise NotTlsError(f"content type {content_type} on first record")
        raise MalformedError(f"content type {content_type}")
    if len(buf) >= 2 and buf[1] != 3:
        if first:
            raise NotTlsError(f"record version major {buf[1]}")
        raise MalformedError(f"record version major {buf[1]}")
    if len(buf) >= RECORD_HEADER_LEN:
        (length,) = struct.unpack_from("!H", buf, 3)
        if length > MAX_FRAGMENT_LEN:
            raise OversizeRecordError(f"record length {length:#06x}")


def parse_records(
    buf: bytes, *, first: bool = False
) -> t.Tuple[t.List[TlsRecord], bytes]:
    """Splits whole records off the front of an in-order stream.

    Returns the records and the unconsumed tail. `first` marks a buffer
    that starts at the very first byte of the direction, where an
    implausible header means the stream is not TLS at all.
    """
    records = []
    pos = 0

    while len(buf) - pos > 0:
        _check_header(buf[pos : pos + RECORD_HEADER_LEN], first=first)
        if len(buf) - pos < RECORD_HEADER_LEN:
            break
        content_type, version, length = struct.unpack_from("!BHH", buf, pos)
        end = pos + RECORD_HEADER_LEN + length
        if end > len(buf):
            break
        records.append(
            TlsRecord(
                content_type, version, buf[pos + RECORD_HEADER_LEN : end]
            )
        )
        pos = end
        first = False

    return records, buf[pos:]


def looks_like_record_header(buf: bytes) -> bool:
    if len(buf) < RECORD_HEADER_LEN:
        return False
    try:
        _check_header(buf[:RECORD_HEADER_LEN], first=False)
    except (MalformedError, OversizeRecordError):
        return False
    return True
