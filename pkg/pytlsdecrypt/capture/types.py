import enum
import hashlib
import ipaddress
import typing as t
from dataclasses import dataclass

IpAddress = t.Union[ipaddress.IPv4Address, ipaddress.IPv6Address]


class LinkType(enum.IntEnum):
    ETHERNET = 1
    RAW_IP = 101
    LINUX_SLL = 113


class TcpFlags(enum.IntFlag):
    FIN = 0x01
    SYN = 0x02
    RST = 0x04
    PSH = 0x08
    ACK = 0x10


@dataclass(frozen=True, order=True)
class Endpoint:
    ip: IpAddress
    port: int

    def __str__(self) -> str:
        if self.ip.version == 6:
            return f"[{self.ip}]:{self.port}"
        return f"{self.ip}:{self.port}"


@dataclass(frozen=True, order=True)
class FlowKey:
    """Bidirectional identity of one TCP connection.

    Endpoints are stored in canonical order so that both directions of a
    connection map onto the same key.
    """

    ip_a: IpAddress
    port_a: int
    ip_b: IpAddress
    port_b: int

    @classmethod
    def of(cls, src: Endpoint, dst: Endpoint) -> "FlowKey":
        low, high = sorted((src, dst))
        return cls(low.ip, low.port, high.ip, high.port)

    @property
    def endpoint_a(self) -> Endpoint:
        return Endpoint(self.ip_a, self.port_a)

    @property
    def endpoint_b(self) -> Endpoint:
        return Endpoint(self.ip_b, self.port_b)

    def short_hash(self) -> str:
        text = f"{self.endpoint_a}-{self.endpoint_b}"
        return hashlib.sha256(text.encode("ascii")).hexdigest()[:8]

    def __str__(self) -> str:
        return f"{self.endpoint_a}<->{self.endpoint_b}"


@dataclass(frozen=True)
class TcpSegment:
    """One decoded TCP segment.

    Direction is not known to the decoder; the flow table resolves it from
    `src` once the connection's initiator is established.
    """

    flow: FlowKey
    src: Endpoint
    dst: Endpoint
    seq: int
    flags: TcpFlags
    payload: bytes
    ts: float

    @property
    def is_syn_only(self) -> bool:
        return TcpFlags.SYN in self.flags and TcpFlags.ACK not in self.flags


@dataclass(frozen=True)
class PcapHeader:
    magic: int
    endianness: str
    ts_resolution: str
    version: t.Tuple[int, int]
    snaplen: int
    link_type: int

    @property
    def ts_divisor(self) -> int:
        return 1_000_000_000 if self.ts_resolution == "nano" else 1_000_000


@dataclass(frozen=True)
class PcapRecord:
    ts: float
    link_type: int
    frame: bytes
    orig_len: int
