import struct
import typing as t
from dataclasses import dataclass

from cryptography.hazmat.primitives import hmac
from cryptography.hazmat.primitives.kdf.hkdf import HKDFExpand

from ..types import TlsVersion
from .exceptions import (
    KeyLengthError,
    LabelTooLongError,
    NonceShapeMismatchError,
    UnsupportedSuiteError,
)
from .suites import CipherKind, SuiteParams, hash_algorithm

MASTER_SECRET_LEN = 48
RANDOM_LEN = 32
NONCE_LEN = 12
EXPLICIT_NONCE_LEN = 8
MAX_LABEL_LEN = 255
TLS13_LABEL_PREFIX = b"tls13 "


@dataclass
class DirectionKeys:
    """Write keys of one direction. `seq` counts protected records."""

    enc_key: bytes
    fixed_iv: bytes
    mac_key: t.Optional[bytes] = None
    seq: int = 0
    secret: t.Optional[bytes] = None


def _hmac(key: bytes, data: bytes, hash_name: str) -> bytes:
    h = hmac.HMAC(key, hash_algorithm(hash_name))
    h.update(data)
    return h.finalize()


def prf_tls12(
    secret: bytes,
    label: str,
    seed: bytes,
    out_len: int,
    hash_name: str = "sha256",
) -> bytes:
    if out_len < 0:
        raise ValueError("out_len must not be negative")
    seed = label.encode("ascii") + seed
    out = b""
    a = seed
    while len(out) < out_len:
        a = _hmac(secret, a, hash_name)
        out += _hmac(secret, a + seed, hash_name)
    return out[:out_len]


def _check_lengths(keys: DirectionKeys, suite: SuiteParams) -> DirectionKeys:
    if len(keys.enc_key) != suite.key_len or len(keys.fixed_iv) != (
        suite.iv_len
    ):
        raise KeyLengthError(f"derived lengths do not match {suite.name}")
    if len(keys.mac_key or b"") != suite.mac_len:
        raise KeyLengthError(f"derived mac length does not match {suite.name}")
    return keys


def derive_keys_tls12(
    master_secret: bytes,
    client_random: bytes,
    server_random: bytes,
    suite: SuiteParams,
) -> t.Tuple[DirectionKeys, DirectionKeys]:
    if suite.tls13:
        raise UnsupportedSuiteError(f"{suite.name} is a TLS 1.3 suite")
    if len(master_secret) != MASTER_SECRET_LEN:
        raise KeyLengthError(f"master secret is {len(master_secret)} bytes")
    if len(client_random) != RANDOM_LEN or len(server_random) != RANDOM_LEN:
        raise KeyLengthError("randoms must be 32 bytes")

    block = prf_tls12(
        master_secret,
        "key expansion",
        server_random + client_random,
        suite.key_block_len,
        suite.prf_hash,
    )

    parts = []
    pos = 0
    for size in (
        suite.mac_len,
        suite.mac_len,
        suite.key_len,
        suite.key_len,
        suite.iv_len,
        suite.iv_len,
    ):
        parts.append(block[pos : pos + size])
        pos += size
    client_mac, server_mac, client_key, server_key, client_iv, server_iv = (
        parts
    )

    mac = suite.kind is CipherKind.CBC_HMAC
    client = DirectionKeys(
        client_key, client_iv, mac_key=client_mac if mac else None
    )
    server = DirectionKeys(
        server_key, server_iv, mac_key=server_mac if mac else None
    )
    return _check_lengths(client, suite), _check_lengths(server, suite)


def hkdf_expand_label(
    secret: bytes,
    label: str,
    context: bytes,
    out_len: int,
    hash_name: str = "sha256",
) -> bytes:
    full_label = TLS13_LABEL_PREFIX + label.encode("ascii")
    if len(full_label) > MAX_LABEL_LEN:
        raise LabelTooLongError(f"label is {len(full_label)} bytes")
    if out_len == 0:
        return b""

    info = (
        struct.pack("!HB", out_len, len(full_label))
        + full_label
        + struct.pack("!B", len(context))
        + context
    )
    return HKDFExpand(
        algorithm=hash_algorithm(hash_name), length=out_len, info=info
    ).derive(secret)


def derive_keys_tls13(
    traffic_secret: bytes, suite: SuiteParams
) -> DirectionKeys:
    if not suite.tls13:
        raise UnsupportedSuiteError(f"{suite.name} is not a TLS 1.3 suite")
    if len(traffic_secret) != suite.hash_len:
        raise KeyLengthError(
            f"traffic secret is {len(traffic_secret)} bytes, "
            f"{suite.name} needs {suite.hash_len}"
        )

    keys = DirectionKeys(
        enc_key=hkdf_expand_label(
            traffic_secret, "key", b"", suite.key_len, suite.prf_hash
        ),
        fixed_iv=hkdf_expand_label(
            traffic_secret, "iv", b"", NONCE_LEN, suite.prf_hash
        ),
        secret=traffic_secret,
    )
    return _check_lengths(keys, suite)


def next_secret_tls13(traffic_secret: bytes, suite: SuiteParams) -> bytes:
    return hkdf_expand_label(
        traffic_secret, "traffic upd", b"", suite.hash_len, suite.prf_hash
    )


def record_nonce(
    keys: DirectionKeys,
    explicit: t.Optional[bytes] = None,
    version: TlsVersion = TlsVersion.TLS1_2,
) -> bytes:
    if len(keys.fixed_iv) == 4:
        if version is TlsVersion.TLS1_3:
            raise NonceShapeMismatchError("TLS 1.3 needs a 12-byte iv")
        if explicit is None or len(explicit) != EXPLICIT_NONCE_LEN:
            raise NonceShapeMismatchError("GCM needs an 8-byte explicit nonce")
        return keys.fixed_iv + explicit

    if len(keys.fixed_iv) == NONCE_LEN:
        if explicit is not None:
            raise NonceShapeMismatchError("explicit nonce not allowed here")
        padded = keys.seq.to_bytes(NONCE_LEN, "big")
        return bytes(a ^ b for a, b in zip(keys.fixed_iv, padded))

    raise NonceShapeMismatchError(f"{len(keys.fixed_iv)}-byte iv has no nonce")
