import pytest

from pytlsdecrypt.tlswire import (
    MalformedError,
    NotTlsError,
    OversizeRecordError,
    TlsRecord,
    looks_like_record_header,
    parse_records,
)
from tests.faked_tls import APPLICATION_DATA, HANDSHAKE, tls_record


class TestParseRecords:
    def test_should_split_whole_records_and_keep_tail(self) -> None:
        # given
        buf = (
            tls_record(HANDSHAKE, b"abc")
            + tls_record(APPLICATION_DATA, b"defg")
            + tls_record(APPLICATION_DATA, b"partial")[:6]
        )
        # when
        records, tail = parse_records(buf)
        # then
        assert records == [
            TlsRecord(HANDSHAKE, 0x0303, b"abc"),
            TlsRecord(APPLICATION_DATA, 0x0303, b"defg"),
        ]
        assert tail == buf[-6:]

    def test_any_split_point_should_give_same_records(self) -> None:
        # given
        buf = tls_record(HANDSHAKE, b"x" * 40) + tls_record(
            APPLICATION_DATA, b"y" * 17
        )
        whole, _ = parse_records(buf)
        for cut in range(len(buf) + 1):
            # when
            head, tail = parse_records(buf[:cut])
            rest, leftover = parse_records(tail + buf[cut:])
            # then
            assert head + rest == whole
            assert leftover == b""

    def test_oversized_length_should_raise(self) -> None:
        # given
        buf = bytes([APPLICATION_DATA, 3, 3, 0x49, 0x00])
        # when / then
        with pytest.raises(OversizeRecordError):
            parse_records(buf)

    def test_implausible_first_record_should_mean_not_tls(self) -> None:
        # given
        buf = b"GET / HTTP/1.1\r\n"
        # when / then
        with pytest.raises(NotTlsError):
            parse_records(buf, first=True)
        with pytest.raises(MalformedError):
            parse_records(buf)

    def test_bad_version_after_first_should_be_malformed(self) -> None:
        # given
        buf = tls_record(HANDSHAKE, b"ok") + bytes([HANDSHAKE, 9, 9, 0, 1])
        # when / then
        with pytest.raises(MalformedError):
            parse_records(buf, first=True)

    def test_serialize_should_restore_wire_bytes(self) -> None:
        # given
        wire = tls_record(HANDSHAKE, b"hello", version=0x0301)
        # when
        (record,), _ = parse_records(wire)
        # then
        assert record.serialize() == wire


class TestLooksLikeRecordHeader:
    @pytest.mark.parametrize(
        "buf, expected",
        [
            (bytes([23, 3, 3, 0, 20]), True),
            (bytes([22, 3, 1, 0x48, 0x00]), True),
            (bytes([23, 3, 3, 0x49, 0x00]), False),
            (bytes([99, 3, 3, 0, 1]), False),
            (bytes([23, 4, 3, 0, 1]), False),
            (bytes([23, 3]), False),
        ],
    )
    def test_should_recognise_plausible_headers(
        self, buf: bytes, expected: bool
    ) -> None:
        assert looks_like_record_header(buf) is expected
