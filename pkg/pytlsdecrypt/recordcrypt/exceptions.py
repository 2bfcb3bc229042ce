from ..exceptions import PyTlsDecryptError


class RecordCryptError(PyTlsDecryptError):
    pass


class AuthFailureError(RecordCryptError):
    pass


class BadPaddingError(RecordCryptError):
    pass


class TooShortError(RecordCryptError):
    pass
