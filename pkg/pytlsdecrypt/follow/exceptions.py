from ..exceptions import PyTlsDecryptError


class FileRemovedError(PyTlsDecryptError):
    pass
