import enum
import typing as t
from dataclasses import dataclass

from cryptography.hazmat.primitives import hashes

from ..types import TlsVersion
from .exceptions import UnsupportedSuiteError


class CipherKind(str, enum.Enum):
    GCM = "gcm"
    CHACHA = "chacha"
    CBC_HMAC = "cbc_hmac"


_HASHES: t.Dict[str, t.Callable[[], hashes.HashAlgorithm]] = {
    "sha1": hashes.SHA1,
    "sha256": hashes.SHA256,
    "sha384": hashes.SHA384,
}


def hash_algorithm(name: str) -> hashes.HashAlgorithm:
    return _HASHES[name]()


@dataclass(frozen=True)
class SuiteParams:
    id: int
    name: str
    kind: CipherKind
    key_len: int
    iv_len: int
    mac_len: int
    tag_len: int
    prf_hash: str
    mac_hash: t.Optional[str] = None
    tls13: bool = False

    @property
    def version(self) -> TlsVersion:
        return TlsVersion.TLS1_3 if self.tls13 else TlsVersion.TLS1_2

    @property
    def hash_len(self) -> int:
        return hash_algorithm(self.prf_hash).digest_size

    @property
    def key_block_len(self) -> int:
        return 2 * (self.mac_len + self.key_len + self.iv_len)


def _gcm(id: int, name: str, key_len: int, prf_hash: str) -> SuiteParams:
    return SuiteParams(id, name, CipherKind.GCM, key_len, 4, 0, 16, prf_hash)


def _chacha(id: int, name: str) -> SuiteParams:
    return SuiteParams(id, name, CipherKind.CHACHA, 32, 12, 0, 16, "sha256")


def _cbc(id: int, name: str, key_len: int, mac_hash: str) -> SuiteParams:
    mac_len = hash_algorithm(mac_hash).digest_size
    return SuiteParams(
        id,
        name,
        CipherKind.CBC_HMAC,
        key_len,
        16,
        mac_len,
        0,
        "sha256",
        mac_hash=mac_hash,
    )


def _tls13(
    id: int, name: str, kind: CipherKind, key_len: int, prf_hash: str
) -> SuiteParams:
    return SuiteParams(
        id, name, kind, key_len, 12, 0, 16, prf_hash, tls13=True
    )


SUITES: t.Dict[int, SuiteParams] = {
    suite.id: suite
    for suite in (
        _cbc(0x002F, "TLS_RSA_WITH_AES_128_CBC_SHA", 16, "sha1"),
        _cbc(0x0035, "TLS_RSA_WITH_AES_256_CBC_SHA", 32, "sha1"),
        _cbc(0x003C, "TLS_RSA_WITH_AES_128_CBC_SHA256", 16, "sha256"),
        _cbc(0xC013, "TLS_ECDHE_RSA_WITH_AES_128_CBC_SHA", 16, "sha1"),
        _cbc(0xC014, "TLS_ECDHE_RSA_WITH_AES_256_CBC_SHA", 32, "sha1"),
        _gcm(0x009C, "TLS_RSA_WITH_AES_128_GCM_SHA256", 16, "sha256"),
        _gcm(0x009D, "TLS_RSA_WITH_AES_256_GCM_SHA384", 32, "sha384"),
        _gcm(0xC02B, "TLS_ECDHE_ECDSA_WITH_AES_128_GCM_SHA256", 16, "sha256"),
        _gcm(0xC02C, "TLS_ECDHE_ECDSA_WITH_AES_256_GCM_SHA384", 32, "sha384"),
        _gcm(0xC02F, "TLS_ECDHE_RSA_WITH_AES_128_GCM_SHA256", 16, "sha256"),
        _gcm(0xC030, "TLS_ECDHE_RSA_WITH_AES_256_GCM_SHA384", 32, "sha384"),
        _chacha(0xCCA8, "TLS_ECDHE_RSA_WITH_CHACHA20_POLY1305_SHA256"),
        _chacha(0xCCA9, "TLS_ECDHE_ECDSA_WITH_CHACHA20_POLY1305_SHA256"),
        _tls13(0x1301, "TLS_AES_128_GCM_SHA256", CipherKind.GCM, 16, "sha256"),
        _tls13(0x1302, "TLS_AES_256_GCM_SHA384", CipherKind.GCM, 32, "sha384"),
        _tls13(
            0x1303,
            "TLS_CHACHA20_POLY1305_SHA256",
            CipherKind.CHACHA,
            32,
            "sha256",
        ),
    )
}

# recognised for reporting, never decrypted
LEGACY_SUITE_NAMES: t.Dict[int, str] = {
    0x0001: "TLS_RSA_WITH_NULL_MD5",
    0x0002: "TLS_RSA_WITH_NULL_SHA",
    0x0004: "TLS_RSA_WITH_RC4_128_MD5",
    0x0005: "TLS_RSA_WITH_RC4_128_SHA",
    0x000A: "TLS_RSA_WITH_3DES_EDE_CBC_SHA",
    0x003B: "TLS_RSA_WITH_NULL_SHA256",
    0xC011: "TLS_ECDHE_RSA_WITH_RC4_128_SHA",
    0xC012: "TLS_ECDHE_RSA_WITH_3DES_EDE_CBC_SHA",
}


def lookup_suite(suite_id: int) -> SuiteParams:
    try:
        return SUITES[suite_id]
    except KeyError as e:
        raise UnsupportedSuiteError(
            f"{suite_name(suite_id)} ({suite_id:#06x})"
        ) from e


def suite_name(suite_id: int) -> str:
    if suite_id in SUITES:
        return SUITES[suite_id].name
    return LEGACY_SUITE_NAMES.get(suite_id, f"{suite_id:#06x}")


def is_supported(suite_id: int, version: t.Optional[TlsVersion]) -> bool:
    suite = SUITES.get(suite_id)
    return suite is not None and suite.version is version
