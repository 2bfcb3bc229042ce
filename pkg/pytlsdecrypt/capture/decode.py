import ipaddress
import typing as t

import dpkt

from ..result import Result
from .exceptions import DecodeError
from .types import Endpoint, FlowKey, LinkType, TcpFlags, TcpSegment

ETH_TYPE_IP = 0x0800
ETH_TYPE_ARP = 0x0806
ETH_TYPE_VLAN = 0x8100
ETH_TYPE_IP6 = 0x86DD

IP_PROTO_HOPOPTS = 0
IP_PROTO_TCP = 6
IP_PROTO_FRAGMENT = 44

_ETH_HEADER_LEN = 14
_VLAN_TAG_LEN = 4
_SLL_HEADER_LEN = 16


def _strip_link(link_type: int, frame: bytes) -> t.Tuple[int, bytes]:
    """Returns (ethertype, network-layer bytes) for a captured frame."""
    if link_type == LinkType.ETHERNET:
        if len(frame) < _ETH_HEADER_LEN:
            raise DecodeError("ethernet header truncated")
        eth_type = int.from_bytes(frame[12:14], "big")
        offset = _ETH_HEADER_LEN
        if eth_type == ETH_TYPE_VLAN:
            if len(frame) < offset + _VLAN_TAG_LEN:
                raise DecodeError("vlan tag truncated")
            eth_type = int.from_bytes(frame[offset + 2 : offset + 4], "big")
            offset += _VLAN_TAG_LEN
        return eth_type, frame[offset:]

    if link_type == LinkType.LINUX_SLL:
        if len(frame) < _SLL_HEADER_LEN:
            raise DecodeError("sll header truncated")
        return int.from_bytes(frame[14:16], "big"), frame[_SLL_HEADER_LEN:]

    if link_type == LinkType.RAW_IP:
        version = frame[0] >> 4
        if version == 4:
            return ETH_TYPE_IP, frame
        if version == 6:
            return ETH_TYPE_IP6, frame
        raise DecodeError(f"raw ip version {version}")

    raise DecodeError(f"unsupported link type {link_type}")


def _decode_tcp(transport: t.Any) -> t.Any:
    if isinstance(transport, dpkt.tcp.TCP):
        tcp = transport
    else:
        try:
            tcp = dpkt.tcp.TCP(bytes(transport))
        except dpkt.UnpackError as e:
            raise DecodeError("tcp header truncated") from e

    if len(tcp.opts) < tcp.off * 4 - 20:
        raise DecodeError("tcp header truncated")
    return tcp


def decode_frame(
    link_type: int, frame: bytes, ts: float = 0.0
) -> Result[TcpSegment]:
    """Decodes one captured frame down to its TCP segment.

    Non-TCP traffic is skipped with a reason; malformed frames yield a
    `DecodeError`. Checksums are not validated and IP fragments are not
    reassembled.
    """
    if not frame:
        return Result.error(DecodeError("empty frame"))

    try:
        eth_type, l3 = _strip_link(link_type, frame)

        if eth_type == ETH_TYPE_IP:
            try:
                ip = dpkt.ip.IP(l3)
            except dpkt.UnpackError as e:
                raise DecodeError("ip header truncated") from e
            if len(ip.opts) < ip.hl * 4 - 20:
                raise DecodeError("ip header truncated")
            if ip.mf or ip.offset:
                raise DecodeError("fragmented ip packet")
            if ip.p != IP_PROTO_TCP:
                return Result.skip(f"ip protocol {ip.p}")
            transport = ip.data
        elif eth_type == ETH_TYPE_IP6:
            try:
                ip = dpkt.ip6.IP6(l3)
            except dpkt.UnpackError as e:
                raise DecodeError("ip header truncated") from e
            if ip.nxt == IP_PROTO_FRAGMENT:
                raise DecodeError("fragmented ip packet")
            hop_by_hop_tcp = (
                ip.nxt == IP_PROTO_HOPOPTS
                and len(l3) > 40
                and l3[40] == IP_PROTO_TCP
            )
            if ip.nxt != IP_PROTO_TCP and not hop_by_hop_tcp:
                return Result.skip(f"ipv6 next header {ip.nxt}")
            transport = ip.data
        elif eth_type == ETH_TYPE_ARP:
            return Result.skip("arp")
        else:
            return Result.skip(f"ethertype {eth_type:#06x}")

        tcp = _decode_tcp(transport)
    except DecodeError as e:
        return Result.error(e)

    src = Endpoint(ipaddress.ip_address(ip.src), tcp.sport)
    dst = Endpoint(ipaddress.ip_address(ip.dst), tcp.dport)
    return Result.ok(
        TcpSegment(
            flow=FlowKey.of(src, dst),
            src=src,
            dst=dst,
            seq=tcp.seq,
            flags=TcpFlags(tcp.flags & 0x1F),
            payload=bytes(tcp.data),
            ts=ts,
        )
    )
