import threading
import typing as t
from logging import getLogger
from pathlib import Path

import dpkt

from ..follow import BasePoller, FileTail, poll_forever
from .exceptions import BadMagicError, CorruptRecordError, TruncatedHeaderError
from .types import PcapHeader, PcapRecord

logger = getLogger(__name__)

GLOBAL_HEADER_LEN = 24
RECORD_HEADER_LEN = 16
# Larger captured lengths are treated as corruption, not as frames.
MAX_CAPTURED_LEN = 0x4000000

_MAGICS: t.Dict[int, t.Tuple[str, str]] = {
    0xA1B2C3D4: ("big", "micro"),
    0xD4C3B2A1: ("little", "micro"),
    0xA1B23C4D: ("big", "nano"),
    0x4D3CB2A1: ("little", "nano"),
}


def check_magic(buf: bytes) -> int:
    magic = int.from_bytes(buf[:4], "big")
    if magic not in _MAGICS:
        raise BadMagicError(f"not a pcap file (magic {magic:#010x})")
    return magic


def parse_global_header(buf: bytes) -> PcapHeader:
    if len(buf) >= 4:
        check_magic(buf)
    if len(buf) < GLOBAL_HEADER_LEN:
        raise TruncatedHeaderError(
            f"pcap global header needs {GLOBAL_HEADER_LEN} bytes, "
            f"got {len(buf)}"
        )

    magic = check_magic(buf)
    endianness, resolution = _MAGICS[magic]
    hdr_cls = dpkt.pcap.FileHdr if endianness == "big" else dpkt.pcap.LEFileHdr
    hdr = hdr_cls(buf[:GLOBAL_HEADER_LEN])
    if hdr.snaplen == 0:
        raise BadMagicError("pcap snaplen must be positive")

    return PcapHeader(
        magic=magic,
        endianness=endianness,
        ts_resolution=resolution,
        version=(hdr.v_major, hdr.v_minor),
        snaplen=hdr.snaplen,
        link_type=hdr.linktype,
    )


def split_records(
    header: PcapHeader, buf: bytes
) -> t.Tuple[t.List[PcapRecord], int]:
    """Cuts `buf` into complete records.

    Returns the records and the number of bytes they occupy; anything past
    that is an incomplete trailing record.
    """
    hdr_cls = (
        dpkt.pcap.PktHdr if header.endianness == "big" else dpkt.pcap.LEPktHdr
    )
    records: t.List[PcapRecord] = []
    pos = 0

    while len(buf) - pos >= RECORD_HEADER_LEN:
        rec_hdr = hdr_cls(buf[pos : pos + RECORD_HEADER_LEN])
        if rec_hdr.caplen > MAX_CAPTURED_LEN:
            raise CorruptRecordError(
                f"record at byte {pos} claims {rec_hdr.caplen} bytes"
            )
        end = pos + RECORD_HEADER_LEN + rec_hdr.caplen
        if end > len(buf):
            break
        records.append(
            PcapRecord(
                ts=rec_hdr.tv_sec + rec_hdr.tv_usec / header.ts_divisor,
                link_type=header.link_type,
                frame=bytes(buf[pos + RECORD_HEADER_LEN : end]),
                orig_len=rec_hdr.len,
            )
        )
        pos = end

    return records, pos


class PcapReader:
    """One-shot iteration over a classic pcap file.

    The global header is validated on construction. A truncated trailing
    record ends iteration and is reported through `truncated`.
    """

    def __init__(self, path: t.Union[str, Path]) -> None:
        self._path = Path(path)
        with self._path.open("rb") as fp:
            self.header = parse_global_header(fp.read(GLOBAL_HEADER_LEN))
        self.truncated = False

    def __iter__(self) -> t.Iterator[PcapRecord]:
        chunk_size = 1 << 20
        with self._path.open("rb") as fp:
            fp.seek(GLOBAL_HEADER_LEN)
            pending = b""
            while True:
                chunk = fp.read(chunk_size)
                pending += chunk
                records, consumed = split_records(self.header, pending)
                yield from records
                pending = pending[consumed:]
                if not chunk:
                    break

        if pending:
            self.truncated = True
            logger.warning(
                "[%s] truncated trailing record (%d bytes) ignored",
                self._path,
                len(pending),
            )


def open_pcap(path: t.Union[str, Path]) -> PcapReader:
    return PcapReader(path)


class PcapFollower(BasePoller[PcapRecord]):
    """Polls a pcap file that may still be written to."""

    def __init__(self, path: t.Union[str, Path]) -> None:
        self._tail = FileTail(path, on_restart=self._forget_header)
        self.header: t.Optional[PcapHeader] = None

    def _forget_header(self) -> None:
        self.header = None

    def poll(self) -> t.List[PcapRecord]:
        buf = self._tail.read_new()

        if self.header is None:
            if len(buf) < GLOBAL_HEADER_LEN:
                if len(buf) >= 4:
                    check_magic(buf)
                return []
            self.header = parse_global_header(buf[:GLOBAL_HEADER_LEN])
            self._tail.commit(GLOBAL_HEADER_LEN)
            buf = buf[GLOBAL_HEADER_LEN:]

        records, consumed = split_records(self.header, buf)
        self._tail.commit(consumed)
        return records


def follow_pcap(
    path: t.Union[str, Path],
    poll_interval_ms: int,
    *,
    idle_polls: t.Optional[int] = None,
    stop: t.Optional[threading.Event] = None,
) -> t.Iterator[PcapRecord]:
    return poll_forever(
        PcapFollower(path), poll_interval_ms, idle_polls=idle_polls, stop=stop
    )
