from ..exceptions import PyTlsDecryptError


class ReassemblyError(PyTlsDecryptError):
    pass


class UnknownFlowError(ReassemblyError):
    pass
