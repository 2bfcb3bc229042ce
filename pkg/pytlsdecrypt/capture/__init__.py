from .decode import decode_frame
from .exceptions import (
    BadMagicError,
    CaptureError,
    CorruptRecordError,
    DecodeError,
    TruncatedHeaderError,
)
from .pcap import (
    PcapFollower,
    PcapReader,
    follow_pcap,
    open_pcap,
    parse_global_header,
    split_records,
)
from .types import (
    Endpoint,
    FlowKey,
    IpAddress,
    LinkType,
    PcapHeader,
    PcapRecord,
    TcpFlags,
    TcpSegment,
)

__all__ = (
    "decode_frame",
    "BadMagicError",
    "CaptureError",
    "CorruptRecordError",
    "DecodeError",
    "TruncatedHeaderError",
    "PcapFollower",
    "PcapReader",
    "follow_pcap",
    "open_pcap",
    "parse_global_header",
    "split_records",
    "Endpoint",
    "FlowKey",
    "IpAddress",
    "LinkType",
    "PcapHeader",
    "PcapRecord",
    "TcpFlags",
    "TcpSegment",
)
