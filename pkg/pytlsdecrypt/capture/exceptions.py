from ..exceptions import PyTlsDecryptError


class CaptureError(PyTlsDecryptError):
    pass


class BadMagicError(CaptureError):
    pass


class TruncatedHeaderError(CaptureError):
    pass


class CorruptRecordError(CaptureError):
    pass


class DecodeError(CaptureError):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason
