import enum
import typing as t
from dataclasses import dataclass, field
from logging import getLogger

from ..capture import FlowKey
from ..types import Direction, TlsVersion
from .exceptions import StateViolationError
from .handshake import (
    ClientHello,
    HandshakeDefragmenter,
    HandshakeMessage,
    HandshakeType,
    ServerHello,
    parse_client_hello,
    parse_server_hello,
)
from .records import ContentType, TlsRecord

logger = getLogger(__name__)


class HandshakeState(str, enum.Enum):
    AWAITING_HELLO = "awaiting_hello"
    HELLO_SEEN = "hello_seen"
    NEGOTIATED = "negotiated"
    ESTABLISHED = "established"
    BROKEN = "broken"


@dataclass(frozen=True)
class EncryptedRecord:
    session_id: str
    direction: Direction
    seq: int
    content_type: int
    legacy_version: int
    ciphertext: bytes
    ts: float = 0.0

    @property
    def header(self) -> bytes:
        return TlsRecord(
            self.content_type, self.legacy_version, self.ciphertext
        ).header


@dataclass(frozen=True)
class PlaintextHandshake:
    direction: Direction
    message: HandshakeMessage
    ts: float = 0.0


SessionEvent = t.Union[EncryptedRecord, PlaintextHandshake]


@dataclass
class TlsSession:
    """Handshake state of one connection, as seen from the wire.

    Tags every record as plaintext handshake or as ciphertext ready for
    decryption. Keys and decryption live with the caller.
    """

    flow: FlowKey
    id: str = ""
    state: HandshakeState = HandshakeState.AWAITING_HELLO
    client_hello: t.Optional[ClientHello] = None
    server_hello: t.Optional[ServerHello] = None
    ciphering: t.Dict[Direction, bool] = field(
        default_factory=lambda: {d: False for d in Direction}
    )
    seq: t.Dict[Direction, int] = field(
        default_factory=lambda: {d: 0 for d in Direction}
    )
    retry_requests: int = 0
    _defrag: t.Dict[Direction, HandshakeDefragmenter] = field(
        default_factory=lambda: {d: HandshakeDefragmenter() for d in Direction}
    )

    @property
    def client_random(self) -> t.Optional[bytes]:
        return self.client_hello.random if self.client_hello else None

    @property
    def server_random(self) -> t.Optional[bytes]:
        return self.server_hello.random if self.server_hello else None

    @property
    def cipher_suite(self) -> t.Optional[int]:
        return self.server_hello.cipher_suite if self.server_hello else None

    @property
    def sni(self) -> t.Optional[str]:
        return self.client_hello.sni if self.client_hello else None

    @property
    def version(self) -> t.Optional[TlsVersion]:
        if self.server_hello is None:
            return None
        try:
            return TlsVersion(self.server_hello.version)
        except ValueError:
            return None

    @property
    def default_id(self) -> str:
        if self.client_random is None:
            return ""
        return self.client_random[:8].hex()

    def require_negotiated(self) -> t.Tuple[bytes, bytes, int, TlsVersion]:
        version = self.version
        if (
            self.client_random is None
            or self.server_random is None
            or self.cipher_suite is None
            or version is None
        ):
            raise StateViolationError(
                f"[{self.flow}] handshake parameters incomplete"
            )
        return self.client_random, self.server_random, self.cipher_suite, (
            version
        )

    def mark_broken(self) -> None:
        self.state = HandshakeState.BROKEN

    def advance(
        self, record: TlsRecord, direction: Direction, ts: float = 0.0
    ) -> t.List[SessionEvent]:
        if self.state is HandshakeState.BROKEN:
            return []
        try:
            return self._advance(record, direction, ts)
        except Exception:
            self.mark_broken()
            raise

    def _advance(
        self, record: TlsRecord, direction: Direction, ts: float
    ) -> t.List[SessionEvent]:
        content_type = record.content_type

        if self.version is TlsVersion.TLS1_3:
            if content_type == ContentType.CHANGE_CIPHER_SPEC:
                return []
            return [self._encrypted(record, direction, ts)]

        if self.ciphering[direction]:
            return [self._encrypted(record, direction, ts)]

        if content_type == ContentType.CHANGE_CIPHER_SPEC:
            if self.server_hello is None and self.retry_requests:
                # middlebox compatibility record after a retry request
                return []
            if self.server_hello is None:
                raise StateViolationError(
                    f"[{self.flow}] change_cipher_spec before server_hello"
                )
            self.ciphering[direction] = True
            self.seq[direction] = 0
            if all(self.ciphering.values()):
                self.state = HandshakeState.ESTABLISHED
            logger.debug("[%s] %s ciphered", self.flow, direction.value)
            return []

        if content_type == ContentType.HANDSHAKE:
            messages = self._defrag[direction].feed(record.fragment)
            events: t.List[SessionEvent] = []
            for message in messages:
                self._on_handshake(message, direction)
                events.append(PlaintextHandshake(direction, message, ts))
                if self.version is TlsVersion.TLS1_3:
                    break
            return events

        if content_type == ContentType.ALERT:
            logger.debug("[%s] plaintext alert %s", self.flow, direction.value)
            return []

        raise StateViolationError(
            f"[{self.flow}] content type {content_type} "
            f"before change_cipher_spec"
        )

    def _encrypted(
        self, record: TlsRecord, direction: Direction, ts: float
    ) -> EncryptedRecord:
        seq = self.seq[direction]
        self.seq[direction] = seq + 1
        return EncryptedRecord(
            session_id=self.id,
            direction=direction,
            seq=seq,
            content_type=record.content_type,
            legacy_version=record.legacy_version,
            ciphertext=record.fragment,
            ts=ts,
        )

    def _on_handshake(
        self, message: HandshakeMessage, direction: Direction
    ) -> None:
        if message.msg_type == HandshakeType.CLIENT_HELLO:
            if direction is not Direction.CLIENT_TO_SERVER:
                raise StateViolationError(
                    f"[{self.flow}] client_hello from server"
                )
            hello = parse_client_hello(message.body)
            if (
                self.client_hello is not None
                and self.client_hello.random != hello.random
            ):
                raise StateViolationError(
                    f"[{self.flow}] second client_hello changes random"
                )
            self.client_hello = hello
            if self.state is HandshakeState.AWAITING_HELLO:
                self.state = HandshakeState.HELLO_SEEN
            return

        if message.msg_type == HandshakeType.SERVER_HELLO:
            if self.client_hello is None:
                raise StateViolationError(
                    f"[{self.flow}] server_hello before client_hello"
                )
            if self.server_hello is not None:
                raise StateViolationError(
                    f"[{self.flow}] duplicate server_hello"
                )
            hello = parse_server_hello(message.body)
            if hello.is_retry_request:
                self.retry_requests += 1
                logger.debug("[%s] hello retry request", self.flow)
                return
            if hello.compression_method != 0:
                raise StateViolationError(
                    f"[{self.flow}] compression method "
                    f"{hello.compression_method} not supported"
                )
            self.server_hello = hello
            self.state = HandshakeState.NEGOTIATED
            logger.info(
                "[%s] negotiated %#06x suite %#06x",
                self.flow,
                hello.version,
                hello.cipher_suite,
            )
            return

        if self.client_hello is None:
            raise StateViolationError(
                f"[{self.flow}] handshake type {message.msg_type} "
                f"before client_hello"
            )
