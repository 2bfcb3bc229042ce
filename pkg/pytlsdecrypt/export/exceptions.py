from ..exceptions import PyTlsDecryptError


class ExportError(PyTlsDecryptError):
    pass
