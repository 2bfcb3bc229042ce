import enum


class Direction(str, enum.Enum):
    CLIENT_TO_SERVER = "c2s"
    SERVER_TO_CLIENT = "s2c"

    @property
    def opposite(self) -> "Direction":
        if self is Direction.CLIENT_TO_SERVER:
            return Direction.SERVER_TO_CLIENT
        return Direction.CLIENT_TO_SERVER

    @property
    def side(self) -> str:
        return "client" if self is Direction.CLIENT_TO_SERVER else "server"


class TlsVersion(enum.IntEnum):
    SSL3_0 = 0x0300
    TLS1_0 = 0x0301
    TLS1_1 = 0x0302
    TLS1_2 = 0x0303
    TLS1_3 = 0x0304

    @property
    def label(self) -> str:
        if self is TlsVersion.SSL3_0:
            return "SSL3.0"
        return f"TLS1.{self.value - TlsVersion.TLS1_0}"

    @property
    def decryptable(self) -> bool:
        return self in (TlsVersion.TLS1_2, TlsVersion.TLS1_3)


class SessionStatus(str, enum.Enum):
    DECRYPTED = "decrypted"
    NO_KEY = "no_key"
    UNSUPPORTED_SUITE = "unsupported_suite"
    PARTIAL = "partial"
    BROKEN = "broken"
    NOT_TLS = "not_tls"
