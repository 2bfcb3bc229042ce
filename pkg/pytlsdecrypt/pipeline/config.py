import typing as t
from dataclasses import dataclass

from ..capture import Endpoint, IpAddress
from ..reassembly.impl import DEFAULT_IDLE_TIMEOUT, DEFAULT_MAX_PENDING

MIB = 1024 * 1024


@dataclass(frozen=True)
class PipelineConfig:
    ports: t.FrozenSet[int] = frozenset()
    hosts: t.FrozenSet[IpAddress] = frozenset()
    max_pending_session: int = 1 * MIB
    max_pending_total: int = 64 * MIB
    max_stream_pending: int = DEFAULT_MAX_PENDING
    idle_timeout: float = DEFAULT_IDLE_TIMEOUT
    resync_window: int = 64

    def accepts(self, src: Endpoint, dst: Endpoint) -> bool:
        if self.ports and not {src.port, dst.port} & self.ports:
            return False
        if self.hosts and not {src.ip, dst.ip} & self.hosts:
            return False
        return True
