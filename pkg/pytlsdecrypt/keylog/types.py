import enum
from dataclasses import dataclass


class KeyLogLabel(str, enum.Enum):
    CLIENT_RANDOM = "CLIENT_RANDOM"
    CLIENT_HANDSHAKE_TRAFFIC_SECRET = "CLIENT_HANDSHAKE_TRAFFIC_SECRET"
    SERVER_HANDSHAKE_TRAFFIC_SECRET = "SERVER_HANDSHAKE_TRAFFIC_SECRET"
    CLIENT_TRAFFIC_SECRET_0 = "CLIENT_TRAFFIC_SECRET_0"
    SERVER_TRAFFIC_SECRET_0 = "SERVER_TRAFFIC_SECRET_0"

    @property
    def is_tls13(self) -> bool:
        return self is not KeyLogLabel.CLIENT_RANDOM


@dataclass(frozen=True)
class KeyLogEntry:
    label: KeyLogLabel
    client_random: bytes
    secret: bytes

    def to_line(self) -> str:
        return (
            f"{self.label.value} {self.client_random.hex()} "
            f"{self.secret.hex()}"
        )
