import typing as t

import pytest

from pytlsdecrypt.capture import FlowKey
from pytlsdecrypt.tlswire import (
    HELLO_RETRY_REQUEST_RANDOM,
    EncryptedRecord,
    HandshakeState,
    HandshakeType,
    PlaintextHandshake,
    SessionEvent,
    StateViolationError,
    TlsRecord,
    TlsSession,
    parse_records,
)
from pytlsdecrypt.types import Direction, TlsVersion
from tests.faked_tls import (
    APPLICATION_DATA,
    C2S,
    CHANGE_CIPHER_SPEC,
    CLIENT,
    HANDSHAKE,
    S2C,
    SERVER,
    FakeTlsSession,
    handshake_message,
    server_hello_body,
    tls12_session,
    tls13_session,
)


def replay(
    fake: FakeTlsSession,
) -> t.Tuple[TlsSession, t.List[SessionEvent]]:
    session = TlsSession(FlowKey.of(CLIENT, SERVER))
    events: t.List[SessionEvent] = []
    for direction, flight in fake.flights:
        records, tail = parse_records(flight)
        assert tail == b""
        for record in records:
            events.extend(session.advance(record, direction))
    return session, events


def encrypted(
    events: t.Iterable[SessionEvent], direction: Direction
) -> t.List[EncryptedRecord]:
    return [
        e
        for e in events
        if isinstance(e, EncryptedRecord) and e.direction is direction
    ]


class TestTlsSession:
    def test_tls12_should_negotiate_and_tag_finished_as_first_cipher(
        self,
    ) -> None:
        # given
        fake = tls12_session(0xC030)
        # when
        session, events = replay(fake)
        # then
        assert session.state is HandshakeState.ESTABLISHED
        assert session.version is TlsVersion.TLS1_2
        assert session.cipher_suite == 0xC030
        assert session.sni == "example.com"
        assert session.default_id == fake.session_id
        client = encrypted(events, C2S)
        assert client[0].seq == 0
        assert client[0].content_type == HANDSHAKE
        assert [r.seq for r in client] == list(range(len(client)))
        assert client[-1].content_type == APPLICATION_DATA

    def test_tls12_should_surface_plaintext_handshake(self) -> None:
        # given
        fake = tls12_session()
        # when
        _, events = replay(fake)
        # then
        kinds = [
            e.message.msg_type
            for e in events
            if isinstance(e, PlaintextHandshake)
        ]
        assert kinds == [
            HandshakeType.CLIENT_HELLO,
            HandshakeType.SERVER_HELLO,
            HandshakeType.CERTIFICATE,
            HandshakeType.SERVER_HELLO_DONE,
            HandshakeType.CLIENT_KEY_EXCHANGE,
        ]

    def test_tls13_should_treat_records_after_server_hello_as_cipher(
        self,
    ) -> None:
        # given
        fake = tls13_session(0x1302)
        # when
        session, events = replay(fake)
        # then
        assert session.version is TlsVersion.TLS1_3
        server = encrypted(events, S2C)
        client = encrypted(events, C2S)
        assert all(r.content_type == APPLICATION_DATA for r in server)
        assert [r.seq for r in server] == list(range(len(server)))
        assert len(client) == 2

    def test_change_cipher_spec_before_server_hello_should_raise(
        self,
    ) -> None:
        # given
        session = TlsSession(FlowKey.of(CLIENT, SERVER))
        ccs = TlsRecord(CHANGE_CIPHER_SPEC, 0x0303, b"\x01")
        # when
        with pytest.raises(StateViolationError):
            session.advance(ccs, C2S)
        # then
        assert session.state is HandshakeState.BROKEN
        assert session.advance(ccs, C2S) == []

    def test_application_data_before_cipher_should_raise(self) -> None:
        # given
        session = TlsSession(FlowKey.of(CLIENT, SERVER))
        # when / then
        with pytest.raises(StateViolationError):
            session.advance(
                TlsRecord(APPLICATION_DATA, 0x0303, b"x" * 30), C2S
            )

    def test_retry_request_should_wait_for_real_server_hello(self) -> None:
        # given
        fake = tls13_session()
        session = TlsSession(FlowKey.of(CLIENT, SERVER))
        (hello,), _ = parse_records(fake.flights[0][1])
        retry = TlsRecord(
            HANDSHAKE,
            0x0303,
            handshake_message(
                2,
                server_hello_body(
                    HELLO_RETRY_REQUEST_RANDOM,
                    0x1301,
                    version=0x0304,
                ),
            ),
        )
        # when
        session.advance(hello, C2S)
        session.advance(retry, S2C)
        session.advance(TlsRecord(CHANGE_CIPHER_SPEC, 0x0303, b"\x01"), C2S)
        # then
        assert session.retry_requests == 1
        assert session.server_hello is None
        assert session.state is HandshakeState.HELLO_SEEN

    def test_server_hello_before_client_hello_should_raise(self) -> None:
        # given
        session = TlsSession(FlowKey.of(CLIENT, SERVER))
        record = TlsRecord(
            HANDSHAKE,
            0x0303,
            handshake_message(2, server_hello_body(bytes(32), 0xC02F)),
        )
        # when / then
        with pytest.raises(StateViolationError):
            session.advance(record, S2C)

    def test_require_negotiated_should_raise_before_server_hello(
        self,
    ) -> None:
        # given
        session = TlsSession(FlowKey.of(CLIENT, SERVER))
        # when / then
        with pytest.raises(StateViolationError):
            session.require_negotiated()
