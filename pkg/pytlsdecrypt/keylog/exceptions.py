from ..exceptions import PyTlsDecryptError


class KeyLogError(PyTlsDecryptError):
    pass


class KeyLogFormatError(KeyLogError):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


class KeyLogReadError(KeyLogError):
    pass


class NoSessionsFoundError(KeyLogError):
    pass
