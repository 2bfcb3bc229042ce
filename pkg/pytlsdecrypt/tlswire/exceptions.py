from ..exceptions import PyTlsDecryptError


class TlsWireError(PyTlsDecryptError):
    pass


class NotTlsError(TlsWireError):
    pass


class OversizeRecordError(TlsWireError):
    pass


class MalformedError(TlsWireError):
    pass


class StateViolationError(TlsWireError):
    pass
