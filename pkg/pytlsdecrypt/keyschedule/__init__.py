from .derive import (
    DirectionKeys,
    derive_keys_tls12,
    derive_keys_tls13,
    hkdf_expand_label,
    next_secret_tls13,
    prf_tls12,
    record_nonce,
)
from .exceptions import (
    KeyLengthError,
    KeyScheduleError,
    LabelTooLongError,
    NonceShapeMismatchError,
    UnsupportedSuiteError,
)
from .suites import (
    LEGACY_SUITE_NAMES,
    SUITES,
    CipherKind,
    SuiteParams,
    hash_algorithm,
    is_supported,
    lookup_suite,
    suite_name,
)

__all__ = (
    "DirectionKeys",
    "derive_keys_tls12",
    "derive_keys_tls13",
    "hkdf_expand_label",
    "next_secret_tls13",
    "prf_tls12",
    "record_nonce",
    "KeyLengthError",
    "KeyScheduleError",
    "LabelTooLongError",
    "NonceShapeMismatchError",
    "UnsupportedSuiteError",
    "LEGACY_SUITE_NAMES",
    "SUITES",
    "CipherKind",
    "SuiteParams",
    "hash_algorithm",
    "is_supported",
    "lookup_suite",
    "suite_name",
)
