import enum
import struct
import typing as t
from dataclasses import dataclass
from logging import getLogger

from cryptography.exceptions import InvalidSignature, InvalidTag
from cryptography.hazmat.primitives import hmac
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes
from cryptography.hazmat.primitives.ciphers.aead import (
    AESGCM,
    ChaCha20Poly1305,
)

from ..keyschedule import (
    CipherKind,
    DirectionKeys,
    SuiteParams,
    hash_algorithm,
    record_nonce,
)
from ..tlswire import ContentType, EncryptedRecord, HandshakeType
from ..types import TlsVersion
from .exceptions import (
    AuthFailureError,
    BadPaddingError,
    RecordCryptError,
    TooShortError,
)

logger = getLogger(__name__)

AES_BLOCK = 16
FINISHED_HEADER = bytes([HandshakeType.FINISHED]) + (12).to_bytes(3, "big")


@dataclass(frozen=True)
class PlaintextRecord:
    content_type: int
    payload: bytes


class Alignment(str, enum.Enum):
    OK = "ok"
    WARNING = "warning"
    SKIPPED = "skipped"


def _seq_bytes(keys: DirectionKeys) -> bytes:
    return keys.seq.to_bytes(8, "big")


def _aead(suite: SuiteParams, key: bytes) -> t.Union[AESGCM, ChaCha20Poly1305]:
    if suite.kind is CipherKind.CHACHA:
        return ChaCha20Poly1305(key)
    return AESGCM(key)


def _open(
    suite: SuiteParams,
    keys: DirectionKeys,
    nonce: bytes,
    sealed: bytes,
    aad: bytes,
) -> bytes:
    try:
        return _aead(suite, keys.enc_key).decrypt(nonce, sealed, aad)
    except InvalidTag as e:
        raise AuthFailureError(f"tag mismatch at seq {keys.seq}") from e


def _open_tls12_aead(
    keys: DirectionKeys, rec: EncryptedRecord, suite: SuiteParams
) -> PlaintextRecord:
    data = rec.ciphertext
    explicit_len = 8 if suite.kind is CipherKind.GCM else 0
    if len(data) < explicit_len + suite.tag_len:
        raise TooShortError(f"{len(data)} byte record")

    if explicit_len:
        nonce = record_nonce(keys, data[:explicit_len])
    else:
        nonce = record_nonce(keys)
    sealed = data[explicit_len:]
    aad = _seq_bytes(keys) + struct.pack(
        "!BHH",
        rec.content_type,
        rec.legacy_version,
        len(sealed) - suite.tag_len,
    )
    return PlaintextRecord(
        rec.content_type, _open(suite, keys, nonce, sealed, aad)
    )


def _open_tls13(
    keys: DirectionKeys, rec: EncryptedRecord, suite: SuiteParams
) -> PlaintextRecord:
    if len(rec.ciphertext) < suite.tag_len + 1:
        raise TooShortError(f"{len(rec.ciphertext)} byte record")

    nonce = record_nonce(keys, version=TlsVersion.TLS1_3)
    inner = _open(suite, keys, nonce, rec.ciphertext, rec.header)
    content = inner.rstrip(b"\x00")
    if not content:
        raise BadPaddingError("inner plaintext has no content type")
    return PlaintextRecord(content[-1], content[:-1])


def _open_cbc(
    keys: DirectionKeys, rec: EncryptedRecord, suite: SuiteParams
) -> PlaintextRecord:
    data = rec.ciphertext
    if len(data) < 2 * AES_BLOCK or len(data) % AES_BLOCK:
        raise TooShortError(f"{len(data)} byte record")

    decryptor = Cipher(
        algorithms.AES(keys.enc_key), modes.CBC(data[:AES_BLOCK])
    ).decryptor()
    padded = decryptor.update(data[AES_BLOCK:]) + decryptor.finalize()

    pad = padded[-1]
    if pad + 1 > len(padded) or padded[-(pad + 1) :] != bytes(
        [pad] * (pad + 1)
    ):
        raise BadPaddingError(f"bad padding at seq {keys.seq}")
    content = padded[: -(pad + 1)]
    if len(content) < suite.mac_len:
        raise AuthFailureError(f"record shorter than mac at seq {keys.seq}")

    payload = content[: len(content) - suite.mac_len]
    mac = content[len(content) - suite.mac_len :]
    h = hmac.HMAC(
        keys.mac_key or b"", hash_algorithm(suite.mac_hash or suite.prf_hash)
    )
    h.update(_seq_bytes(keys))
    h.update(
        struct.pack("!BHH", rec.content_type, rec.legacy_version, len(payload))
    )
    h.update(payload)
    try:
        h.verify(mac)
    except InvalidSignature as e:
        raise AuthFailureError(f"mac mismatch at seq {keys.seq}") from e
    return PlaintextRecord(rec.content_type, payload)


def decrypt_record(
    keys: DirectionKeys,
    rec: EncryptedRecord,
    suite: SuiteParams,
    version: TlsVersion,
) -> PlaintextRecord:
    """Opens one protected record.

    `rec.seq` must equal `keys.seq`. The direction's sequence number
    advances whether or not the record authenticates, keeping later
    records aligned.
    """
    if rec.seq != keys.seq:
        raise RecordCryptError(
            f"record {rec.seq} opened with keys at seq {keys.seq}"
        )
    try:
        if version is TlsVersion.TLS1_3:
            return _open_tls13(keys, rec, suite)
        if suite.kind is CipherKind.CBC_HMAC:
            return _open_cbc(keys, rec, suite)
        return _open_tls12_aead(keys, rec, suite)
    finally:
        keys.seq += 1


def verify_finished_alignment(
    version: t.Optional[TlsVersion], first: PlaintextRecord
) -> Alignment:
    if version is TlsVersion.TLS1_3:
        return Alignment.SKIPPED
    if (
        first.content_type == ContentType.HANDSHAKE
        and first.payload[:4] == FINISHED_HEADER
    ):
        return Alignment.OK
    logger.warning(
        "first protected record is not a finished message, key mismatch"
    )
    return Alignment.WARNING
