from ..exceptions import PyTlsDecryptError


class MissingOutError(PyTlsDecryptError):
    pass
