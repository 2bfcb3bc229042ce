import enum
import typing as t
from dataclasses import dataclass, field
from logging import getLogger

from .exceptions import MalformedError

logger = getLogger(__name__)

MAX_HANDSHAKE_LEN = 1 << 20

# SHA-256("HelloRetryRequest")
HELLO_RETRY_REQUEST_RANDOM = bytes.fromhex(
    "cf21ad74e59a6111be1d8c021e65b891c2a211167abb8c5e079e09e2c8a8339c"
)

EXT_SERVER_NAME = 0
EXT_SUPPORTED_VERSIONS = 43


class HandshakeType(enum.IntEnum):
    CLIENT_HELLO = 1
    SERVER_HELLO = 2
    NEW_SESSION_TICKET = 4
    END_OF_EARLY_DATA = 5
    ENCRYPTED_EXTENSIONS = 8
    CERTIFICATE = 11
    SERVER_KEY_EXCHANGE = 12
    CERTIFICATE_REQUEST = 13
    SERVER_HELLO_DONE = 14
    CERTIFICATE_VERIFY = 15
    CLIENT_KEY_EXCHANGE = 16
    FINISHED = 20
    KEY_UPDATE = 24


@dataclass(frozen=True)
class HandshakeMessage:
    msg_type: int
    body: bytes

    def serialize(self) -> bytes:
        return (
            bytes([self.msg_type])
            + len(self.body).to_bytes(3, "big")
            + self.body
        )


class ByteReader:
    def __init__(self, data: bytes) -> None:
        self._data = data
        self._pos = 0

    @property
    def remaining(self) -> int:
        return len(self._data) - self._pos

    def read(self, n: int) -> bytes:
        if n > self.remaining:
            raise MalformedError(
                f"need {n} bytes at offset {self._pos}, have {self.remaining}"
            )
        out = self._data[self._pos : self._pos + n]
        self._pos += n
        return out

    def uint(self, width: int) -> int:
        return int.from_bytes(self.read(width), "big")

    def vector(self, len_width: int) -> bytes:
        return self.read(self.uint(len_width))

    def expect_end(self) -> None:
        if self.remaining:
            raise MalformedError(f"{self.remaining} trailing bytes")


class HandshakeDefragmenter:
    """Reassembles handshake messages that span record boundaries."""

    def __init__(self) -> None:
        self._buf = b""

    @property
    def pending(self) -> int:
        return len(self._buf)

    def feed(self, fragment: bytes) -> t.List[HandshakeMessage]:
        self._buf += fragment
        messages = []
        while len(self._buf) >= 4:
            length = int.from_bytes(self._buf[1:4], "big")
            if length > MAX_HANDSHAKE_LEN:
                raise MalformedError(f"handshake length {length}")
            if len(self._buf) < 4 + length:
                break
            messages.append(
                HandshakeMessage(self._buf[0], self._buf[4 : 4 + length])
            )
            self._buf = self._buf[4 + length :]
        return messages


@dataclass(frozen=True)
class ClientHello:
    legacy_version: int
    random: bytes
    session_id: bytes
    cipher_suites: t.Tuple[int, ...]
    compression_methods: bytes
    sni: t.Optional[str] = None
    supported_versions: t.Tuple[int, ...] = ()
    extensions: t.Tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class ServerHello:
    legacy_version: int
    random: bytes
    session_id: bytes
    cipher_suite: int
    compression_method: int
    selected_version: t.Optional[int] = None

    @property
    def version(self) -> int:
        if self.selected_version is not None:
            return self.selected_version
        return self.legacy_version

    @property
    def is_retry_request(self) -> bool:
        return self.random == HELLO_RETRY_REQUEST_RANDOM


def _extensions(reader: ByteReader) -> t.Iterator[t.Tuple[int, bytes]]:
    if not reader.remaining:
        return
    block = ByteReader(reader.vector(2))
    reader.expect_end()
    while block.remaining:
        ext_type = block.uint(2)
        yield ext_type, block.vector(2)


def _server_name(data: bytes) -> t.Optional[str]:
    names = ByteReader(ByteReader(data).vector(2))
    while names.remaining:
        name_type = names.uint(1)
        name = names.vector(2)
        if name_type == 0:
            return name.decode("ascii", errors="replace")
    return None


def parse_client_hello(body: bytes) -> ClientHello:
    reader = ByteReader(body)
    legacy_version = reader.uint(2)
    random = reader.read(32)
    session_id = reader.vector(1)
    suites_raw = reader.vector(2)
    if len(suites_raw) % 2:
        raise MalformedError("odd cipher suite vector length")
    suites = tuple(
        int.from_bytes(suites_raw[i : i + 2], "big")
        for i in range(0, len(suites_raw), 2)
    )
    compression = reader.vector(1)

    sni = None
    versions: t.Tuple[int, ...] = ()
    seen = []
    for ext_type, data in _extensions(reader):
        seen.append(ext_type)
        if ext_type == EXT_SERVER_NAME and data:
            sni = _server_name(data)
        elif ext_type == EXT_SUPPORTED_VERSIONS:
            raw = ByteReader(data).vector(1)
            versions = tuple(
                int.from_bytes(raw[i : i + 2], "big")
                for i in range(0, len(raw) - 1, 2)
            )

    return ClientHello(
        legacy_version=legacy_version,
        random=random,
        session_id=session_id,
        cipher_suites=suites,
        compression_methods=compression,
        sni=sni,
        supported_versions=versions,
        extensions=tuple(seen),
    )


def parse_server_hello(body: bytes) -> ServerHello:
    reader = ByteReader(body)
    legacy_version = reader.uint(2)
    random = reader.read(32)
    session_id = reader.vector(1)
    cipher_suite = reader.uint(2)
    compression = reader.uint(1)

    selected = None
    for ext_type, data in _extensions(reader):
        if ext_type == EXT_SUPPORTED_VERSIONS:
            ext = ByteReader(data)
            selected = ext.uint(2)
            ext.expect_end()

    return ServerHello(
        legacy_version=legacy_version,
        random=random,
        session_id=session_id,
        cipher_suite=cipher_suite,
        compression_method=compression,
        selected_version=selected,
    )
