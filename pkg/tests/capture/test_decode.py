import struct

import pytest

from pytlsdecrypt.capture import (
    DecodeError,
    FlowKey,
    LinkType,
    TcpFlags,
    decode_frame,
)
from tests.faked_tls import (
    CLIENT,
    SERVER,
    arp_frame,
    endpoint,
    ethernet_frame,
    ip_packet,
    tcp_frame,
)


class TestDecodeFrame:
    def test_should_decode_ethernet_ipv4_tcp(self) -> None:
        # given
        frame = tcp_frame(CLIENT, SERVER, 1234, b"hello")
        # when
        result = decode_frame(LinkType.ETHERNET, frame, 1.5)
        # then
        segment = result.get()
        assert segment.payload == b"hello"
        assert segment.src == CLIENT
        assert segment.dst == SERVER
        assert segment.seq == 1234
        assert segment.flags == TcpFlags.ACK | TcpFlags.PSH
        assert segment.ts == 1.5
        assert segment.flow == FlowKey.of(CLIENT, SERVER)

    def test_should_decode_ipv6(self) -> None:
        # given
        src = endpoint("2001:db8::1", 50123)
        dst = endpoint("2001:db8::2", 443)
        frame = tcp_frame(src, dst, 7, b"v6", TcpFlags.ACK)
        # when
        segment = decode_frame(LinkType.ETHERNET, frame).get()
        # then
        assert segment.src == src
        assert segment.dst == dst
        assert segment.payload == b"v6"
        assert str(segment.src) == "[2001:db8::1]:50123"

    def test_should_skip_vlan_tag(self) -> None:
        # given
        packet = ip_packet(CLIENT, SERVER, 1, b"tagged")
        frame = ethernet_frame(
            struct.pack("!HH", 42, 0x0800) + packet, eth_type=0x8100
        )
        # when
        segment = decode_frame(LinkType.ETHERNET, frame).get()
        # then
        assert segment.payload == b"tagged"

    def test_should_decode_raw_ip_and_linux_sll(self) -> None:
        # given
        packet = ip_packet(CLIENT, SERVER, 1, b"raw")
        sll = bytes(14) + struct.pack("!H", 0x0800) + packet
        # when
        raw = decode_frame(LinkType.RAW_IP, packet).get()
        cooked = decode_frame(LinkType.LINUX_SLL, sll).get()
        # then
        assert raw.payload == b"raw"
        assert cooked.payload == b"raw"

    def test_should_skip_arp(self) -> None:
        # given / when
        result = decode_frame(LinkType.ETHERNET, arp_frame())
        # then
        assert result.is_skipped() is True
        assert result.reason == "arp"

    def test_should_skip_udp(self) -> None:
        # given
        packet = bytearray(ip_packet(CLIENT, SERVER, 1, b"x"))
        packet[9] = 17
        # when
        result = decode_frame(LinkType.RAW_IP, bytes(packet))
        # then
        assert result.is_skipped() is True

    def test_should_report_truncated_tcp_header(self) -> None:
        # given
        frame = tcp_frame(CLIENT, SERVER, 1, b"")[: 14 + 20 + 10]
        # when
        result = decode_frame(LinkType.ETHERNET, frame)
        # then
        assert result.is_error() is True
        assert isinstance(result.exception, DecodeError)
        assert result.reason == "tcp header truncated"

    def test_should_report_fragments(self) -> None:
        # given
        packet = bytearray(ip_packet(CLIENT, SERVER, 1, b"x"))
        packet[6] = 0x20  # more fragments
        # when
        result = decode_frame(LinkType.RAW_IP, bytes(packet))
        # then
        assert result.reason == "fragmented ip packet"

    @pytest.mark.parametrize(
        "link_type, frame",
        [
            (LinkType.ETHERNET, b""),
            (LinkType.ETHERNET, b"\x00" * 10),
            (999, b"\x00" * 60),
        ],
    )
    def test_should_report_undecodable_frames(
        self, link_type: int, frame: bytes
    ) -> None:
        # given / when
        result = decode_frame(link_type, frame)
        # then
        assert result.is_error() is True


class TestFlowKey:
    def test_both_directions_should_map_to_one_key(self) -> None:
        # given
        pairs = [
            (CLIENT, SERVER),
            (endpoint("192.168.1.9", 80), endpoint("10.1.1.1", 8080)),
            (endpoint("::1", 1), endpoint("::1", 2)),
        ]
        for a, b in pairs:
            # when
            forward = FlowKey.of(a, b)
            backward = FlowKey.of(b, a)
            # then
            assert forward == backward
            assert forward.endpoint_a <= forward.endpoint_b
            assert forward.short_hash() == backward.short_hash()
