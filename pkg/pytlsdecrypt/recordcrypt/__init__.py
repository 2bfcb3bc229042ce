from .exceptions import (
    AuthFailureError,
    BadPaddingError,
    RecordCryptError,
    TooShortError,
)
from .impl import (
    Alignment,
    PlaintextRecord,
    decrypt_record,
    verify_finished_alignment,
)

__all__ = (
    "AuthFailureError",
    "BadPaddingError",
    "RecordCryptError",
    "TooShortError",
    "Alignment",
    "PlaintextRecord",
    "decrypt_record",
    "verify_finished_alignment",
)
