from .exceptions import (
    MalformedError,
    NotTlsError,
    OversizeRecordError,
    StateViolationError,
    TlsWireError,
)
from .handshake import (
    HELLO_RETRY_REQUEST_RANDOM,
    ByteReader,
    ClientHello,
    HandshakeDefragmenter,
    HandshakeMessage,
    HandshakeType,
    ServerHello,
    parse_client_hello,
    parse_server_hello,
)
from .records import (
    MAX_FRAGMENT_LEN,
    MAX_PLAINTEXT_LEN,
    RECORD_HEADER_LEN,
    ContentType,
    TlsRecord,
    looks_like_record_header,
    parse_records,
)
from .session import (
    EncryptedRecord,
    HandshakeState,
    PlaintextHandshake,
    SessionEvent,
    TlsSession,
)

__all__ = (
    "MalformedError",
    "NotTlsError",
    "OversizeRecordError",
    "StateViolationError",
    "TlsWireError",
    "HELLO_RETRY_REQUEST_RANDOM",
    "ByteReader",
    "ClientHello",
    "HandshakeDefragmenter",
    "HandshakeMessage",
    "HandshakeType",
    "ServerHello",
    "parse_client_hello",
    "parse_server_hello",
    "MAX_FRAGMENT_LEN",
    "MAX_PLAINTEXT_LEN",
    "RECORD_HEADER_LEN",
    "ContentType",
    "TlsRecord",
    "looks_like_record_header",
    "parse_records",
    "EncryptedRecord",
    "HandshakeState",
    "PlaintextHandshake",
    "SessionEvent",
    "TlsSession",
)
