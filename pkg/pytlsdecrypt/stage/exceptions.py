from ..exceptions import PyTlsDecryptError


class CannotRelinkStageError(PyTlsDecryptError):
    pass


class FinalStageError(PyTlsDecryptError):
    pass


class IncompleteFlowError(PyTlsDecryptError):
    """The flow does not end with a final stage."""
