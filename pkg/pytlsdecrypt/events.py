import typing as t
from dataclasses import dataclass, field

from .types import Direction, SessionStatus


@dataclass(frozen=True)
class DecryptedEvent:
    """A chunk of one direction's plaintext stream."""

    session_id: str
    direction: Direction
    stream_offset: int
    payload: bytes
    content_type: int
    ts: float


@dataclass(frozen=True)
class SessionRecord:
    id: str
    src: str
    dst: str
    version: t.Optional[str]
    cipher: t.Optional[str]
    sni: t.Optional[str]
    status: SessionStatus
    c2s_bytes: int
    s2c_bytes: int
    first_ts: float
    last_ts: float
    alert_count: int
    client_random: t.Optional[bytes] = field(default=None, compare=False)
    cipher_id: t.Optional[int] = field(default=None, compare=False)

    def bytes_for(self, direction: Direction) -> int:
        if direction is Direction.CLIENT_TO_SERVER:
            return self.c2s_bytes
        return self.s2c_bytes


@dataclass(frozen=True)
class SessionUpdate:
    """Provisional state of a session that is still running."""

    record: SessionRecord
