"""Conversion of JVM TLS debug transcripts to NSS key log lines.

Accepted grammar, one session block:

    Client Nonce:            (or a line containing "ClientRandom")
    0000: HH HH HH ... HH    hex-dump rows, up to 16 bytes each
    ...
    Master Secret:
    0000: HH HH HH ... HH
    ...

Other lines may sit between the two parts. A block ends at the next
client nonce header or at the end of the transcript. Blocks whose nonce
is not 32 bytes or whose master secret is not 48 bytes are dropped.
"""
import re
import typing as t
from dataclasses import dataclass, field
from logging import getLogger

from .exceptions import NoSessionsFoundError
from .types import KeyLogEntry, KeyLogLabel

logger = getLogger(__name__)

CLIENT_RANDOM_LEN = 32
MASTER_SECRET_LEN = 48

_NONCE_HEADER = re.compile(r"^\s*(?:Client Nonce:|.*\bClientRandom\b)")
_SECRET_HEADER = re.compile(r"^\s*Master Secret:")
_HEX_ROW = re.compile(r"^\s*[0-9A-Fa-f]{4}:((?: [0-9A-Fa-f]{2}){1,16})")


@dataclass
class JvmConversion:
    entries: t.List[KeyLogEntry] = field(default_factory=list)
    dropped: t.List[str] = field(default_factory=list)

    @property
    def lines(self) -> t.List[str]:
        return [entry.to_line() for entry in self.entries]

    @property
    def text(self) -> str:
        return "".join(f"{line}\n" for line in self.lines)


class _Block:
    def __init__(self, line_no: int) -> None:
        self.line_no = line_no
        self.nonce = bytearray()
        self.secret: t.Optional[bytearray] = None


def convert_jvm_debug(text: str) -> JvmConversion:
    conversion = JvmConversion()
    block: t.Optional[_Block] = None
    target: t.Optional[bytearray] = None
    blocks = 0

    def close() -> None:
        if block is None:
            return
        secret = block.secret or b""
        if (
            len(block.nonce) == CLIENT_RANDOM_LEN
            and len(secret) == MASTER_SECRET_LEN
        ):
            conversion.entries.append(
                KeyLogEntry(
                    KeyLogLabel.CLIENT_RANDOM,
                    bytes(block.nonce),
                    bytes(secret),
                )
            )
            return
        reason = (
            f"block at line {block.line_no}: client nonce "
            f"{len(block.nonce)} bytes, master secret {len(secret)} bytes"
        )
        logger.warning("dropped %s", reason)
        conversion.dropped.append(reason)

    for line_no, line in enumerate(text.splitlines(), start=1):
        if _NONCE_HEADER.match(line):
            close()
            blocks += 1
            block = _Block(line_no)
            target = block.nonce
            continue
        if _SECRET_HEADER.match(line) and block is not None:
            block.secret = bytearray()
            target = block.secret
            continue
        row = _HEX_ROW.match(line)
        if row and target is not None:
            target.extend(bytes.fromhex(row.group(1).replace(" ", "")))
            continue
        target = None

    close()

    if not blocks:
        raise NoSessionsFoundError("no client nonce block in transcript")
    return conversion
